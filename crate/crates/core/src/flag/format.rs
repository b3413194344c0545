use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::character::CharacterTable;
use super::lie::{dot, RootData, Weight, IDENTITY};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormatKind {
    /// Codimension 8 weighted G2 variety.
    G2,
    /// Codimension 3 weighted Grassmannian Gr(2,5).
    Gr25,
}

impl FormatKind {
    pub fn name(self) -> &'static str {
        match self {
            FormatKind::G2 => "g2",
            FormatKind::Gr25 => "gr25",
        }
    }
}

impl fmt::Display for FormatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormatKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "g2" => Ok(FormatKind::G2),
            "gr25" => Ok(FormatKind::Gr25),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// Compiled-in data of a weighted flag format.
#[derive(Clone, Debug)]
pub struct FormatSpec {
    pub kind: FormatKind,
    pub lie_rank: usize,
    /// Dimension of the flag variety.
    pub dimension: usize,
    pub codimension: usize,
    pub lambda: Weight,
    pub rho: Weight,
    root: RootData,
    /// Weights of `V_lambda` with multiplicity, sorted.
    degree_one: Vec<Weight>,
}

impl FormatSpec {
    /// G2 in simple-root coordinates: alpha_1 short, lambda = omega_2 = (3,2),
    /// rho = (5,3). The dual basis makes the pairing a dot product.
    pub fn g2() -> Self {
        let mut gram = IDENTITY;
        gram[0][0] = 2;
        gram[0][1] = -3;
        gram[1][0] = -3;
        gram[1][1] = 6;
        let simple = alloc::vec![[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]];
        let rho = [5, 3, 0, 0, 0];
        Self::build(FormatKind::G2, 2, 5, 8, gram, simple, [3, 2, 0, 0, 0], rho)
    }

    /// GL5 in epsilon coordinates: lambda = e1 + e2, rho = (4,3,2,1,0).
    pub fn gr25() -> Self {
        let simple = (0..4)
            .map(|i| {
                let mut a = [0; 5];
                a[i] = 1;
                a[i + 1] = -1;
                a
            })
            .collect();
        Self::build(FormatKind::Gr25, 4, 6, 3, IDENTITY, simple, [1, 1, 0, 0, 0], [4, 3, 2, 1, 0])
    }

    pub fn new(kind: FormatKind) -> Self {
        match kind {
            FormatKind::G2 => Self::g2(),
            FormatKind::Gr25 => Self::gr25(),
        }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        Ok(Self::new(name.parse()?))
    }

    #[allow(clippy::too_many_arguments)]
    fn build(
        kind: FormatKind,
        lie_rank: usize,
        dimension: usize,
        codimension: usize,
        gram: [[i64; 5]; 5],
        simple: Vec<Weight>,
        lambda: Weight,
        rho: Weight,
    ) -> Self {
        let coords = match kind {
            FormatKind::G2 => 2,
            FormatKind::Gr25 => 5,
        };
        let root = RootData::new(coords, gram, simple, rho);
        let mut table = CharacterTable::new(root.clone(), lambda, rho);
        let mut degree_one = Vec::new();
        for (w, m) in table.weight_multiplicities(1) {
            for _ in 0..m {
                degree_one.push(w);
            }
        }
        Self {
            kind,
            lie_rank,
            dimension,
            codimension,
            lambda,
            rho,
            root,
            degree_one,
        }
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn root_data(&self) -> &RootData {
        &self.root
    }

    /// Length of the cocharacter vector `mu`.
    pub fn param_len(&self) -> usize {
        self.root.coords()
    }

    /// Number of ambient coordinates, `dim V_lambda`.
    pub fn ambient_size(&self) -> usize {
        self.degree_one.len()
    }

    pub fn degree_one_weights(&self) -> &[Weight] {
        &self.degree_one
    }

    pub fn character_table(&self) -> CharacterTable {
        CharacterTable::new(self.root.clone(), self.lambda, self.rho)
    }

    /// Closed-form adjunction number; used only as a consistency assertion.
    pub fn expected_adjunction(&self, param: &CocharacterParam) -> i64 {
        match self.kind {
            FormatKind::G2 => 11 * param.u,
            FormatKind::Gr25 => 2 * param.mu.iter().sum::<i64>() + 5 * param.u,
        }
    }

    pub fn check_param(&self, param: &CocharacterParam) -> Result<()> {
        if param.mu.len() != self.param_len() {
            return Err(Error::ParamLength {
                format: self.name(),
                expected: self.param_len(),
                got: param.mu.len(),
            });
        }
        Ok(())
    }
}

/// The cocharacter `mu` and twist `u` of an embedding.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CocharacterParam {
    pub mu: Vec<i64>,
    pub u: i64,
}

impl CocharacterParam {
    pub fn new(mu: Vec<i64>, u: i64) -> Self {
        Self { mu, u }
    }

    pub fn mu_vector(&self) -> Weight {
        let mut out = [0; 5];
        for (o, m) in out.iter_mut().zip(&self.mu) {
            *o = *m;
        }
        out
    }
}

impl fmt::Display for CocharacterParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.mu.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", m)?;
        }
        write!(f, ":{}", self.u)
    }
}

/// `<nu, mu> + u` over the weights of `V_lambda`, sorted ascending.
pub fn ambient_weights(format: &FormatSpec, param: &CocharacterParam) -> Result<Vec<u32>> {
    format.check_param(param)?;
    let mu = param.mu_vector();
    let mut out = Vec::with_capacity(format.ambient_size());
    for nu in format.degree_one_weights() {
        let w = dot(nu, &mu) + param.u;
        if w <= 0 {
            return Err(Error::NonpositiveWeight { weight: w });
        }
        out.push(u32::try_from(w).map_err(|_| Error::Inconsistent("ambient weight exceeds u32".into()))?);
    }
    out.sort_unstable();
    Ok(out)
}
