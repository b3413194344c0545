use alloc::collections::BTreeSet;
use alloc::vec::Vec;

/// Lattice vector; formats of rank below five leave trailing coordinates at zero.
pub type Weight = [i64; 5];
/// Integer matrix acting on column vectors of [`Weight`].
pub type Matrix = [[i64; 5]; 5];

pub const IDENTITY: Matrix = [
    [1, 0, 0, 0, 0],
    [0, 1, 0, 0, 0],
    [0, 0, 1, 0, 0],
    [0, 0, 0, 1, 0],
    [0, 0, 0, 0, 1],
];

pub fn apply(m: &Matrix, v: &Weight) -> Weight {
    let mut out = [0; 5];
    for (o, row) in out.iter_mut().zip(m) {
        *o = row.iter().zip(v).map(|(a, b)| a * b).sum();
    }
    out
}

pub fn compose(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = [[0; 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            out[i][j] = (0..5).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn transpose(m: &Matrix) -> Matrix {
    let mut out = [[0; 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            out[i][j] = m[j][i];
        }
    }
    out
}

/// Coordinate pairing between lattice and dual lattice.
pub fn dot(a: &Weight, b: &Weight) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &Weight, b: &Weight) -> Weight {
    let mut out = *a;
    for (o, x) in out.iter_mut().zip(b) {
        *o += x;
    }
    out
}

pub fn sub(a: &Weight, b: &Weight) -> Weight {
    let mut out = *a;
    for (o, x) in out.iter_mut().zip(b) {
        *o -= x;
    }
    out
}

pub fn scale(a: &Weight, k: i64) -> Weight {
    a.map(|x| x * k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: Matrix,
    /// `(-1)^length`
    pub sign: i8,
}

/// A root system in chosen lattice coordinates together with its Weyl group.
#[derive(Clone, Debug)]
pub struct RootData {
    coords: usize,
    gram: Matrix,
    simple_roots: Vec<Weight>,
    reflections: Vec<Matrix>,
    weyl_group: Vec<WeylElement>,
    positive_roots: Vec<Weight>,
    /// `gram * a` for each simple root, so `form(v, a)` is one dot product.
    simple_duals: Vec<Weight>,
    positive_duals: Vec<Weight>,
}

impl RootData {
    /// `gram` is an integer W-invariant form in these coordinates; it must make
    /// every simple reflection integral. `rho` is any strictly dominant vector
    /// and only fixes which roots count as positive.
    pub fn new(coords: usize, gram: Matrix, simple_roots: Vec<Weight>, rho: Weight) -> Self {
        let reflections: Vec<Matrix> = simple_roots
            .iter()
            .map(|alpha| {
                let g_alpha = apply(&gram, alpha);
                let norm = dot(alpha, &g_alpha);
                let mut m = IDENTITY;
                for i in 0..5 {
                    for j in 0..5 {
                        let c = 2 * g_alpha[j];
                        assert!(c % norm == 0, "simple reflection is not integral");
                        m[i][j] -= alpha[i] * (c / norm);
                    }
                }
                m
            })
            .collect();

        let mut weyl_group = alloc::vec![WeylElement {
            matrix: IDENTITY,
            sign: 1
        }];
        let mut seen: BTreeSet<Matrix> = BTreeSet::new();
        seen.insert(IDENTITY);
        let mut frontier = 0;
        while frontier < weyl_group.len() {
            let current = weyl_group[frontier].clone();
            frontier += 1;
            for s in &reflections {
                let next = compose(s, &current.matrix);
                if seen.insert(next) {
                    weyl_group.push(WeylElement {
                        matrix: next,
                        sign: -current.sign,
                    });
                }
            }
        }

        let mut roots: BTreeSet<Weight> = BTreeSet::new();
        for w in &weyl_group {
            for a in &simple_roots {
                roots.insert(apply(&w.matrix, a));
            }
        }
        let mut data = Self {
            coords,
            gram,
            simple_roots,
            reflections,
            weyl_group,
            positive_roots: Vec::new(),
            simple_duals: Vec::new(),
            positive_duals: Vec::new(),
        };
        assert!(data.simple_roots.iter().all(|a| data.form(a, &rho) > 0), "rho must be strictly dominant");
        data.positive_roots = roots.into_iter().filter(|r| data.form(r, &rho) > 0).collect();
        data.simple_duals = data.simple_roots.iter().map(|a| apply(&data.gram, a)).collect();
        data.positive_duals = data.positive_roots.iter().map(|a| apply(&data.gram, a)).collect();
        data
    }

    pub fn coords(&self) -> usize {
        self.coords
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn form(&self, a: &Weight, b: &Weight) -> i64 {
        dot(a, &apply(&self.gram, b))
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn reflections(&self) -> &[Matrix] {
        &self.reflections
    }

    pub fn weyl_group(&self) -> &[WeylElement] {
        &self.weyl_group
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// `gram * a` for each positive root, in the order of [`Self::positive_roots`].
    pub fn positive_duals(&self) -> &[Weight] {
        &self.positive_duals
    }

    pub fn is_dominant(&self, v: &Weight) -> bool {
        self.simple_duals.iter().all(|a| dot(v, a) >= 0)
    }

    /// The unique dominant element of the W-orbit of `v`.
    pub fn to_dominant(&self, v: &Weight) -> Weight {
        let mut v = *v;
        'outer: loop {
            for (a, s) in self.simple_duals.iter().zip(&self.reflections) {
                if dot(&v, a) < 0 {
                    v = apply(s, &v);
                    continue 'outer;
                }
            }
            return v;
        }
    }

    /// Distinct elements of the W-orbit of `v`, sorted.
    pub fn orbit(&self, v: &Weight) -> Vec<Weight> {
        let mut out: Vec<Weight> = self.weyl_group.iter().map(|w| apply(&w.matrix, v)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}
