use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::lie::{add, dot, scale, sub, RootData, Weight};

/// A dominant weight of an irreducible representation with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantWeight {
    pub weight: Weight,
    pub multiplicity: u64,
    /// Size of the W-orbit of `weight`.
    pub orbit_size: u64,
}

/// Dominant weight multiplicities of `V_{d lambda}`, memoised per `d`.
///
/// Owned by the caller; parallel sweeps keep one per worker.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    root: RootData,
    lambda: Weight,
    rho: Weight,
    levels: Vec<Option<Vec<DominantWeight>>>,
}

impl CharacterTable {
    pub fn new(root: RootData, lambda: Weight, rho: Weight) -> Self {
        Self {
            root,
            lambda,
            rho,
            levels: Vec::new(),
        }
    }

    pub fn root_data(&self) -> &RootData {
        &self.root
    }

    /// Dominant weights of `V_{d lambda}`, highest first.
    pub fn dominant(&mut self, d: usize) -> &[DominantWeight] {
        if self.levels.len() <= d {
            self.levels.resize(d + 1, None);
        }
        if self.levels[d].is_none() {
            let top = scale(&self.lambda, d as i64);
            self.levels[d] = Some(freudenthal(&self.root, &top, &self.rho));
        }
        self.levels[d].as_deref().expect("just filled")
    }

    /// Root data alongside the dominant weights of `V_{d lambda}`.
    pub fn level(&mut self, d: usize) -> (&RootData, &[DominantWeight]) {
        self.dominant(d);
        (&self.root, self.levels[d].as_deref().expect("filled"))
    }

    /// Full weight system of `V_{d lambda}` with multiplicities.
    pub fn weight_multiplicities(&mut self, d: usize) -> BTreeMap<Weight, u64> {
        let dominant = self.dominant(d).to_vec();
        let mut out = BTreeMap::new();
        for dw in dominant {
            for w in self.root.orbit(&dw.weight) {
                out.insert(w, dw.multiplicity);
            }
        }
        out
    }
}

/// Freudenthal's recursion over the dominant weights below `top`.
fn freudenthal(root: &RootData, top: &Weight, rho: &Weight) -> Vec<DominantWeight> {
    // Every dominant weight below `top` is reached from a higher one by
    // subtracting a single positive root (Stembridge), so a downward search
    // through dominant weights finds them all.
    let mut found: HashMap<Weight, usize> = HashMap::new();
    let mut order: Vec<Weight> = alloc::vec![*top];
    found.insert(*top, 0);
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for a in root.positive_roots() {
            let w = sub(&v, a);
            if root.is_dominant(&w) && !found.contains_key(&w) {
                found.insert(w, order.len());
                order.push(w);
            }
        }
    }
    order.sort_by_key(|v| core::cmp::Reverse(root.form(v, rho)));
    let index: HashMap<Weight, usize> = order.iter().enumerate().map(|(i, v)| (*v, i)).collect();

    let top_rho = add(top, rho);
    let top_norm = root.form(&top_rho, &top_rho) as i128;
    let mut mult: Vec<u64> = alloc::vec![0; order.len()];
    mult[0] = 1;
    for (idx, v) in order.iter().enumerate().skip(1) {
        let mut acc: i128 = 0;
        for (a, ga) in root.positive_roots().iter().zip(root.positive_duals()) {
            let mut w = add(v, a);
            loop {
                let Some(&j) = index.get(&root.to_dominant(&w)) else {
                    break;
                };
                debug_assert!(j < idx);
                acc += dot(&w, ga) as i128 * mult[j] as i128;
                w = add(&w, a);
            }
        }
        let v_rho = add(v, rho);
        let denom = top_norm - root.form(&v_rho, &v_rho) as i128;
        debug_assert!(denom > 0 && (2 * acc) % denom == 0);
        mult[idx] = u64::try_from(2 * acc / denom).expect("multiplicity fits in u64");
    }
    order
        .into_iter()
        .zip(mult)
        .map(|(weight, multiplicity)| DominantWeight {
            orbit_size: root.orbit(&weight).len() as u64,
            weight,
            multiplicity,
        })
        .collect()
}
