//! Candidate search: ambient weight tuples for `X`, the decomposition of
//! `P_X` into initial term and orbifold contributions, and multiplicity solving.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{euler_phi, rat, solve_exact, Rational, RationalFunction, Solution, UniPolynomial};
use crate::error::{Error, Result};
use crate::flag::{
    enumerate_parameters, hilbert_series_with, CocharacterParam, EmbeddingData, FormatKind,
    FormatSpec, ParamBound,
};
use crate::orbifold::{
    basket_kernel_with, capacities, for_each_subset, initial_term, pole_orders, porb_cont, Basket,
    ContributionCache, OrbifoldContribution, QuotientSingularity,
};

/// Which subsets of the candidate types may form a kernel.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum KernelRule {
    /// Any set of distinct types produced for the tuple.
    #[default]
    Unrestricted,
    /// Only sets passing the sub-multiset test against the extended weights,
    /// as for baskets.
    Admissible,
}

/// Parameters of a sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub format: FormatKind,
    /// Canonical weight of `X`: -1 Fano, 0 Calabi–Yau, 1 canonical.
    pub k: i64,
    /// Dimension of `X`, at least 2.
    pub n: usize,
    /// Inclusive bounds on `u`; g2 only, where `u` fixes the adjunction number.
    pub u_range: Option<(i64, i64)>,
    /// Upper bound on the adjunction number `q`.
    pub q_max: Option<i64>,
    /// Only keep tuples reachable by cones of degree below the top ambient
    /// weight followed by quasilinear sections.
    pub strict_geometry: bool,
    pub kernel_rule: KernelRule,
    /// Worker count for parallel drivers; the sequential [`search`] ignores it.
    pub jobs: usize,
}

impl SearchConfig {
    pub fn new(format: FormatKind, k: i64, n: usize) -> Self {
        Self {
            format,
            k,
            n,
            u_range: None,
            q_max: None,
            strict_geometry: false,
            kernel_rule: KernelRule::default(),
            jobs: 1,
        }
    }

    pub fn with_u_range(mut self, lo: i64, hi: i64) -> Self {
        self.u_range = Some((lo, hi));
        self
    }

    pub fn with_q_max(mut self, q: i64) -> Self {
        self.q_max = Some(q);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidConfig("dimension n must be at least 2".into()));
        }
        match (self.format, self.u_range, self.q_max) {
            (_, None, None) => Err(Error::InvalidConfig("a u range or a q bound is required".into())),
            (FormatKind::Gr25, Some(_), _) => Err(Error::InvalidConfig(
                "gr25 parameters are normalised to u in {1, 2}; bound q instead".into(),
            )),
            (_, Some((lo, hi)), _) if lo > hi || hi < 1 => {
                Err(Error::InvalidConfig(alloc::format!("empty u range {}..={}", lo, hi)))
            }
            _ => Ok(()),
        }
    }

    /// Ambient size of `X`: `n + codim + 1`.
    pub fn ambient_size(&self, format: &FormatSpec) -> usize {
        self.n + format.codimension + 1
    }

    fn bound(&self) -> ParamBound {
        match (self.u_range, self.q_max) {
            (Some((_, hi)), Some(q)) => ParamBound::MaxU(hi.min(q.div_euclid(11))),
            (Some((_, hi)), None) => ParamBound::MaxU(hi),
            (None, Some(q)) => ParamBound::MaxQ(q),
            (None, None) => unreachable!("validated"),
        }
    }
}

/// A suggested `n`-fold with its decomposition data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub format: FormatKind,
    pub param: CocharacterParam,
    /// Sorted ascending.
    pub x_weights: Vec<u32>,
    pub k: i64,
    pub n: usize,
    /// `D^n`.
    pub degree: Rational,
    pub basket: Basket,
    /// Zero-sum sets among the potential singularity types of the tuple.
    pub kernels: Vec<Vec<QuotientSingularity>>,
    pub smooth: bool,
    /// Hilbert numerator `H` shared with the embedding.
    pub numerator: Vec<i64>,
}

impl Candidate {
    pub fn numerator_poly(&self) -> UniPolynomial {
        UniPolynomial::from_coeffs(self.numerator.iter().map(|&c| rat(c)).collect())
    }

    pub fn hilbert_series(&self) -> RationalFunction {
        crate::arith::hilbert_fraction(&self.numerator_poly(), &self.x_weights)
    }

    pub fn adjunction_q(&self) -> i64 {
        self.numerator.len() as i64 - 1
    }

    pub fn has_kernel(&self) -> bool {
        !self.kernels.is_empty()
    }

    /// Nonempty basket of terminal 3-fold points only.
    pub fn is_terminal(&self) -> bool {
        !self.basket.is_empty()
            && self
                .basket
                .entries()
                .iter()
                .filter(|e| e.multiplicity > 0)
                .all(|e| e.singularity.is_terminal_3fold())
    }

    /// Re-derives every invariant from scratch, without the search caches.
    pub fn verify(&self) -> Result<bool> {
        let px = self.hilbert_series();
        let pi = initial_term(&px, self.n, self.k)?;
        let mut rhs = pi;
        for e in self.basket.entries() {
            if e.multiplicity == 0 {
                continue;
            }
            let pq = crate::orbifold::qorb(&e.singularity, self.k)?;
            rhs = &rhs + &pq.value.scale(&rat(e.multiplicity as i64));
        }
        let sum: i64 = self.x_weights.iter().map(|&w| w as i64).sum();
        Ok(px == rhs
            && sum == self.adjunction_q() - self.k
            && self.degree == degree_of(&px, self.n)?
            && self.degree.is_positive()
            && self.smooth == self.basket.is_empty())
    }

    pub fn sort_key(&self) -> (u64, &[u32], &Basket, &CocharacterParam) {
        let sum = self.x_weights.iter().map(|&w| w as u64).sum();
        (sum, &self.x_weights, &self.basket, &self.param)
    }
}

/// Weight tuples of length `s` summing to `w` with entries in `[1, max L]`,
/// at most as many copies of `max L` as `L` has, and well-formed (dropping any
/// entry leaves coprime weights). Each tuple is sorted ascending.
pub fn pos_wt(ambient: &[u32], s: usize, w: u64) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let Some(&top) = ambient.iter().max() else {
        return out;
    };
    if s == 0 {
        return out;
    }
    let top_cap = ambient.iter().filter(|&&x| x == top).count();
    let mut cur = Vec::with_capacity(s);
    partitions(s, w, 1, top, top_cap, &mut cur, &mut |p| {
        if well_formed(p) {
            out.push(p.to_vec());
        }
    });
    out
}

fn partitions(s: usize, w: u64, lo: u32, top: u32, top_cap: usize, cur: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    let left = s - cur.len();
    if left == 0 {
        if w == 0 {
            emit(cur);
        }
        return;
    }
    // nondecreasing: every remaining entry is at least `x`
    let mut x = lo;
    while x <= top && (x as u64) * (left as u64) <= w {
        if (w - x as u64) <= top as u64 * (left as u64 - 1) {
            if x == top && left > top_cap {
                break;
            }
            cur.push(x);
            partitions(s, w - x as u64, x, top, top_cap, cur, emit);
            cur.pop();
        }
        x += 1;
    }
}

/// Every `s-1` of the weights are coprime.
pub fn well_formed(p: &[u32]) -> bool {
    let s = p.len();
    if s < 2 {
        return true;
    }
    let mut prefix = vec![0u32; s + 1];
    for i in 0..s {
        prefix[i + 1] = prefix[i].gcd(&p[i]);
    }
    let mut suffix = 0u32;
    for i in (0..s).rev() {
        if prefix[i].gcd(&suffix) != 1 {
            return false;
        }
        suffix = suffix.gcd(&p[i]);
    }
    true
}

/// The tuple arises from the flag variety (`ambient`, of dimension `dim`) by
/// cones of degree below `max(ambient)` followed by quasilinear sections.
pub fn reachable(ambient: &[u32], dim: usize, tuple: &[u32], n: usize) -> bool {
    let top = ambient.iter().copied().max().unwrap_or(0);
    let mut pool = capacities(ambient);
    let mut cones = 0usize;
    for &w in tuple {
        match pool.get_mut(&w) {
            Some(c) if *c > 0 => *c -= 1,
            _ => {
                if w >= top {
                    return false;
                }
                cones += 1;
            }
        }
    }
    dim + cones >= n
}

/// `(1-t)^{n+1} P` at `t = 1`, i.e. `D^n`.
pub fn degree_of(p: &RationalFunction, n: usize) -> Result<Rational> {
    if p.is_zero() {
        return Ok(Rational::zero());
    }
    let one_minus_t = UniPolynomial::one_minus_t_pow(1);
    let (j, rest) = p.denominator().strip_factor(&one_minus_t);
    let j = j as usize;
    if j > n + 1 {
        return Err(Error::DimensionMismatch);
    }
    if j < n + 1 {
        return Ok(Rational::zero());
    }
    let one = Rational::one();
    Ok(p.numerator().eval(&one) / rest.eval(&one))
}

/// Multiplicities with `P - P_I = sum m_i P_{Q_i}`, if a nonnegative integral
/// solution exists.
pub fn solve_multiplicities(
    p: &RationalFunction,
    p_i: &RationalFunction,
    contribs: &[OrbifoldContribution],
) -> Option<Vec<u64>> {
    solve_detailed(&(p - p_i), contribs).map(|(m, _)| m)
}

/// Solution plus whether it is the only one (the contributions are linearly
/// independent).
fn solve_detailed(lhs: &RationalFunction, contribs: &[OrbifoldContribution]) -> Option<(Vec<u64>, bool)> {
    let j = contribs.len();
    if lhs.is_zero() {
        return Some((vec![0; j], false));
    }
    if j == 0 {
        return None;
    }
    // Beyond this many points an evaluation matrix has the rank of the
    // functions themselves.
    let limit = contribs
        .iter()
        .map(|c| &c.value)
        .chain(core::iter::once(lhs))
        .map(|f| f.numerator().degree().unwrap_or(0) + f.denominator().degree().unwrap_or(0))
        .sum::<usize>()
        + 1;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    let push_point = |rows: &mut Vec<Vec<Rational>>, rhs: &mut Vec<Rational>| {
        let pt = rat(rows.len() as i64 + 2);
        rows.push(contribs.iter().map(|c| c.value.eval(&pt).expect("no poles at t >= 2")).collect());
        rhs.push(lhs.eval(&pt).expect("no poles at t >= 2"));
    };
    for _ in 0..j {
        push_point(&mut rows, &mut rhs);
    }
    let (values, unique) = loop {
        match solve_exact(&rows, &rhs, j) {
            Solution::Unique(v) => break (v, true),
            Solution::Inconsistent => return None,
            Solution::Underdetermined { .. } if rows.len() < limit => push_point(&mut rows, &mut rhs),
            Solution::Underdetermined { particular, .. } => break (particular, false),
        }
    };
    let mut m = Vec::with_capacity(j);
    for v in &values {
        if !v.is_integer() || v.is_negative() {
            return None;
        }
        m.push(v.to_integer().to_u64()?);
    }
    let mut sum = RationalFunction::zero();
    for (c, &mi) in contribs.iter().zip(&m) {
        if mi > 0 {
            sum = &sum + &c.value.scale(&rat(mi as i64));
        }
    }
    (sum == *lhs).then_some((m, unique))
}

/// An embedding prepared for tuple examination.
#[derive(Clone, Debug)]
pub struct EmbeddingPlan {
    pub embedding: EmbeddingData,
    numerator: UniPolynomial,
    /// `ord_d(H)` along `Phi_d`, indexed by `d`.
    orders: Vec<u32>,
    /// Sum of the tuple weights, `q - k`.
    pub target: u64,
    pub s: usize,
}

impl EmbeddingPlan {
    pub fn new(embedding: EmbeddingData, config: &SearchConfig, format: &FormatSpec, cache: &mut ContributionCache) -> Self {
        let numerator = embedding.numerator();
        let top = embedding.ambient_weights.iter().copied().max().unwrap_or(1) as usize;
        let mut orders = vec![0; top + 1];
        for (d, o) in orders.iter_mut().enumerate().skip(1) {
            *o = cache.cyclotomic.order(d, &numerator);
        }
        let target = (embedding.adjunction_q as i64 - config.k).max(0) as u64;
        Self {
            numerator,
            orders,
            target,
            s: config.ambient_size(format),
            embedding,
        }
    }

    /// Weight tuples for `X` in this embedding.
    pub fn tuples(&self, config: &SearchConfig, format: &FormatSpec) -> Vec<Vec<u32>> {
        let mut out = pos_wt(&self.embedding.ambient_weights, self.s, self.target);
        if config.strict_geometry {
            out.retain(|t| reachable(&self.embedding.ambient_weights, format.dimension, t, config.n));
        }
        out
    }

    /// No pole of order two or more at a nontrivial root of unity; orbifold
    /// contributions only have simple poles there.
    fn simple_poles(&self, tuple: &[u32]) -> bool {
        let top = *tuple.last().unwrap_or(&1) as usize;
        (2..=top).all(|d| {
            let count = tuple.iter().filter(|&&w| w as usize % d == 0).count() as u32;
            count < 2 || count <= self.orders.get(d).copied().unwrap_or(0) + 1
        })
    }
}

/// Distinct embeddings for the configuration, each with its Hilbert data.
/// Embeddings whose data fail to compute are returned separately.
pub fn plan_embeddings(
    config: &SearchConfig,
    cache: &mut ContributionCache,
) -> Result<(Vec<EmbeddingPlan>, Vec<EmbeddingFailure>)> {
    config.validate()?;
    let format = FormatSpec::new(config.format);
    let mut table = format.character_table();
    let mut plans = Vec::new();
    let mut failures = Vec::new();
    for (param, _) in selected_parameters(config, &format)? {
        match hilbert_series_with(&format, &mut table, &param) {
            Ok(e) => plans.push(EmbeddingPlan::new(e, config, &format, cache)),
            Err(error) => failures.push(EmbeddingFailure { param, error }),
        }
    }
    Ok((plans, failures))
}

/// Parameters from [`enumerate_parameters`] filtered by the configured ranges.
pub fn selected_parameters(config: &SearchConfig, format: &FormatSpec) -> Result<Vec<(CocharacterParam, Vec<u32>)>> {
    config.validate()?;
    let mut params = enumerate_parameters(format, config.bound())?;
    params.retain(|(p, _)| {
        config.u_range.is_none_or(|(lo, hi)| (lo..=hi).contains(&p.u))
            && config.q_max.is_none_or(|q| format.expected_adjunction(p) <= q)
    });
    Ok(params)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingFailure {
    pub param: CocharacterParam,
    pub error: Error,
}

/// Per-worker state for examining tuples.
#[derive(Clone, Debug)]
pub struct Searcher {
    pub k: i64,
    pub n: usize,
    pub kernel_rule: KernelRule,
    pub cache: ContributionCache,
}

impl Searcher {
    pub fn new(k: i64, n: usize) -> Self {
        Self {
            k,
            n,
            kernel_rule: KernelRule::default(),
            cache: ContributionCache::new(),
        }
    }

    pub fn for_config(config: &SearchConfig) -> Self {
        let mut s = Self::new(config.k, config.n);
        s.kernel_rule = config.kernel_rule;
        s
    }

    /// Every candidate with ambient weights `tuple` inside `plan`.
    pub fn examine(&mut self, plan: &EmbeddingPlan, tuple: &[u32]) -> Result<Vec<Candidate>> {
        if !plan.simple_poles(tuple) {
            return Ok(Vec::new());
        }
        let px = self.cache.cyclotomic.hilbert_fraction(&plan.numerator, tuple);
        let degree = degree_of(&px, self.n)?;
        if !degree.is_positive() {
            return Ok(Vec::new());
        }
        let pi = initial_term(&px, self.n, self.k)?;
        let (k, n) = (self.k, self.n);
        let make = |basket: Basket, kernels| Candidate {
            format: plan.embedding.format,
            param: plan.embedding.param.clone(),
            x_weights: tuple.to_vec(),
            k,
            n,
            degree: degree.clone(),
            smooth: basket.is_empty(),
            basket,
            kernels,
            numerator: plan.embedding.numerator_coeffs.clone(),
        };
        if px == pi {
            return Ok(vec![make(Basket::empty(), Vec::new())]);
        }
        let lhs = &px - &pi;
        let (types, extended) = porb_cont(tuple, self.n, self.k);
        let baskets = self.decompose(&lhs, &types, &extended)?;
        if baskets.is_empty() {
            return Ok(Vec::new());
        }
        let slots: Vec<u32> = match self.kernel_rule {
            KernelRule::Unrestricted => types.iter().map(|q| q.r()).collect(),
            KernelRule::Admissible => extended,
        };
        let kernels = basket_kernel_with(&mut self.cache, &types, &slots, self.k)?;
        Ok(baskets.into_iter().map(|b| make(b, kernels.clone())).collect())
    }

    /// Admissible baskets of linearly independent types with positive
    /// multiplicities summing to `lhs`.
    ///
    /// Types of index `d` are chosen for `d` descending. Once they are fixed,
    /// the residue classes at the primitive `d`-th roots of unity give linear
    /// conditions on the multiplicities, and an inconsistent or non-integral
    /// partial system prunes the branch.
    pub fn decompose(
        &mut self,
        lhs: &RationalFunction,
        types: &[QuotientSingularity],
        extended: &[u32],
    ) -> Result<Vec<Basket>> {
        let mut stages = pole_orders(types);
        // poles of lhs that no type can produce make the tuple hopeless
        let den = lhs.denominator().clone();
        let mut poles: Vec<u32> = Vec::new();
        for &w in extended {
            poles.extend((2..=w).filter(|d| w % d == 0));
        }
        poles.sort_unstable();
        poles.dedup();
        for d in poles {
            if !stages.contains(&d) && self.cache.cyclotomic.order(d as usize, &den) > 0 {
                return Ok(Vec::new());
            }
        }
        stages.sort_unstable_by(|a, b| b.cmp(a));
        let mut targets = BTreeMap::new();
        for &d in &stages {
            let class = match self.cache.cyclotomic.residue_class(d as usize, lhs) {
                Ok(c) => c,
                Err(Error::HigherOrderPole { .. }) => return Ok(Vec::new()),
                Err(e) => return Err(e),
            };
            targets.insert(d, class);
        }
        let mut state = DecomposeState {
            types,
            caps: capacities(extended),
            stages: &stages,
            targets: &targets,
            lhs,
            chosen: Vec::new(),
            rows: Vec::new(),
            rhs: Vec::new(),
            found: Vec::new(),
        };
        state.stage(self, 0)?;
        let mut found = state.found;
        found.sort();
        found.dedup();
        Ok(found)
    }
}

struct DecomposeState<'a> {
    types: &'a [QuotientSingularity],
    caps: BTreeMap<u32, usize>,
    stages: &'a [u32],
    targets: &'a BTreeMap<u32, Vec<Rational>>,
    lhs: &'a RationalFunction,
    chosen: Vec<usize>,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    found: Vec<Basket>,
}

impl DecomposeState<'_> {
    fn stage(&mut self, searcher: &mut Searcher, idx: usize) -> Result<()> {
        if idx == self.stages.len() {
            return self.leaf(searcher);
        }
        let d = self.stages[idx];
        let group: Vec<usize> = (0..self.types.len()).filter(|&i| self.types[i].r() == d).collect();
        let cap = self.caps.get(&d).copied().unwrap_or(0).min(group.len());
        let width = euler_phi(d as u64) as usize;
        let target = &self.targets[&d];
        let mut subset = Vec::new();
        for_each_subset(group.len(), cap, &mut subset, 0, &mut |sel| {
            let before = self.chosen.len();
            let (rows_before, rhs_before) = (self.rows.clone(), self.rhs.clone());
            self.chosen.extend(sel.iter().map(|&g| group[g]));
            let cols = self.chosen.len();
            for row in self.rows.iter_mut() {
                row.resize(cols, Rational::zero());
            }
            let mut new_rows = vec![vec![Rational::zero(); cols]; width];
            for (c, &t) in self.chosen.iter().enumerate() {
                if self.types[t].r() % d == 0 {
                    let class = searcher.cache.residue(&self.types[t], searcher.k, d)?;
                    for (row, v) in new_rows.iter_mut().zip(class) {
                        row[c] = v.clone();
                    }
                }
            }
            for (row, b) in new_rows.into_iter().zip(target) {
                if row.iter().all(Zero::is_zero) && b.is_zero() {
                    continue;
                }
                self.rows.push(row);
                self.rhs.push(b.clone());
            }
            if self.feasible() {
                self.stage(searcher, idx + 1)?;
            }
            self.chosen.truncate(before);
            self.rows = rows_before;
            self.rhs = rhs_before;
            Ok(())
        })
    }

    /// The partial system is consistent and every multiplicity it already
    /// forces is a positive integer.
    fn feasible(&self) -> bool {
        let cols = self.chosen.len();
        let ok = |v: &Rational| v.is_integer() && v.is_positive();
        match solve_exact(&self.rows, &self.rhs, cols) {
            Solution::Inconsistent => false,
            Solution::Unique(v) => v.iter().all(ok),
            Solution::Underdetermined { determined, .. } => determined.iter().flatten().all(ok),
        }
    }

    fn leaf(&mut self, searcher: &mut Searcher) -> Result<()> {
        if self.chosen.is_empty() {
            return Ok(());
        }
        let mut contribs = Vec::with_capacity(self.chosen.len());
        for &t in &self.chosen {
            contribs.push(searcher.cache.qorb(&self.types[t], searcher.k)?.clone());
        }
        if let Some((m, true)) = solve_detailed(self.lhs, &contribs) {
            if m.iter().all(|&x| x > 0) {
                let basket = Basket::new(m.into_iter().zip(self.chosen.iter().map(|&t| self.types[t].clone())));
                self.found.push(basket);
            }
        }
        Ok(())
    }
}

/// Sorts by weight sum, weights and basket, and keeps one candidate per
/// `(weights, basket)`.
pub fn finalize(mut candidates: Vec<Candidate>) -> Vec<Candidate> {
    candidates.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    candidates.dedup_by(|b, a| a.x_weights == b.x_weights && a.basket == b.basket);
    candidates
}

/// Result of a sweep.
#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    pub candidates: Vec<Candidate>,
    pub failures: Vec<EmbeddingFailure>,
    pub embeddings: usize,
    pub tuples: usize,
}

/// Sequential sweep over every embedding and tuple.
///
/// An embedding whose tuples raise an error contributes no candidates and is
/// recorded in [`SearchOutcome::failures`].
pub fn search(config: &SearchConfig) -> Result<SearchOutcome> {
    let format = FormatSpec::new(config.format);
    let mut searcher = Searcher::for_config(config);
    let (plans, mut failures) = plan_embeddings(config, &mut searcher.cache)?;
    let mut out = SearchOutcome {
        embeddings: plans.len(),
        ..Default::default()
    };
    let mut candidates = Vec::new();
    for plan in &plans {
        let tuples = plan.tuples(config, &format);
        out.tuples += tuples.len();
        match tuples.iter().map(|t| searcher.examine(plan, t)).collect::<Result<Vec<_>>>() {
            Ok(found) => candidates.extend(found.into_iter().flatten()),
            Err(error) => failures.push(EmbeddingFailure {
                param: plan.embedding.param.clone(),
                error,
            }),
        }
    }
    out.candidates = finalize(candidates);
    out.failures = failures;
    Ok(out)
}
