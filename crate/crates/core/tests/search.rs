use proptest::prelude::*;
use wflag_core::arith::{ratio, solve_exact, RationalFunction, Solution};
use wflag_core::flag::FormatKind;
use wflag_core::orbifold::{basket_kernel, initial_term, qorb, Basket, OrbifoldContribution, QuotientSingularity};
use wflag_core::search::{search, solve_multiplicities, KernelRule, SearchConfig, Searcher};

fn rf(s: &str) -> RationalFunction {
    s.parse().unwrap()
}

fn qs(s: &str) -> QuotientSingularity {
    s.parse().unwrap()
}

#[test]
fn x7_decomposes_into_one_half_point() {
    let px = rf("(1 - t^7)/((1 - t)^4 (1 - t^2))");
    let pi = initial_term(&px, 3, 1).unwrap();
    assert_eq!(pi, rf("(1 + t^2 + t^3 + t^5)/(1 - t)^4"));
    let pq = qorb(&qs("1/2(1,1,1)"), 1).unwrap();
    assert_eq!(pq.value, rf("-t^3/((1 - t)^3 (1 - t^2))"));
    assert_eq!(&pi + &pq.value, px);

    let mut searcher = Searcher::new(1, 3);
    let lhs = &px - &pi;
    let (types, ext) = wflag_core::orbifold::porb_cont(&[1, 1, 1, 1, 2], 3, 1);
    let found = searcher.decompose(&lhs, &types, &ext).unwrap();
    assert_eq!(found, vec!["1/2(1,1,1)".parse::<Basket>().unwrap()]);
}

#[test]
fn kernel_pair_from_the_remark() {
    let a = qs("1/5(3,3,4)");
    let b = qs("1/5(1,2,2)");
    let pa = qorb(&a, 0).unwrap().value;
    assert_eq!(pa, rf("(t^3 - t^4 + t^5)/((1 - t)^3 (1 - t^5))"));
    assert!((&pa + &qorb(&b, 0).unwrap().value).is_zero());
    let kernels = basket_kernel(&[a.clone(), b.clone()], &[5, 5], 0).unwrap();
    assert_eq!(kernels, vec![vec![b, a]]);
    // one 5 cannot host two points
    assert!(basket_kernel(&[qs("1/5(3,3,4)"), qs("1/5(1,2,2)")], &[1, 5], 0).unwrap().is_empty());
    // nonzero sum
    assert!(basket_kernel(&[qs("1/2(1,1,1)"), qs("1/5(3,4,4)")], &[2, 5], -1).unwrap().is_empty());
}

fn all_types(k: i64) -> Vec<QuotientSingularity> {
    let mut out = Vec::new();
    for r in 2..=11u32 {
        for a in 1..r {
            for b in a..r {
                for c in b..r {
                    if let Ok(q) = QuotientSingularity::new(r, &[a as i64, b as i64, c as i64]) {
                        if q.is_compatible(k) {
                            out.push(q);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Linear independence over Q, via evaluation at enough points.
fn independent(contribs: &[OrbifoldContribution]) -> bool {
    let points: usize = contribs
        .iter()
        .map(|c| c.value.numerator().degree().unwrap_or(0) + c.value.denominator().degree().unwrap_or(0))
        .sum::<usize>()
        + 1;
    let rows: Vec<Vec<_>> = (0..points)
        .map(|i| {
            let t = ratio(i as i64 + 2, 1);
            contribs.iter().map(|c| c.value.eval(&t).unwrap()).collect()
        })
        .collect();
    let zero = vec![ratio(0, 1); points];
    matches!(solve_exact(&rows, &zero, contribs.len()), Solution::Unique(_))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn planted_multiplicities_are_recovered(
        k in -1i64..=1,
        picks in prop::collection::btree_set(0usize..400, 1..5),
        mults in prop::collection::vec(1u64..40, 4),
    ) {
        let types = all_types(k);
        let chosen: Vec<_> = picks.iter().map(|&i| types[i % types.len()].clone()).collect();
        let mut distinct = chosen.clone();
        distinct.sort();
        distinct.dedup();
        prop_assume!(distinct.len() == chosen.len());
        let contribs: Vec<_> = chosen.iter().map(|q| qorb(q, k).unwrap()).collect();
        prop_assume!(independent(&contribs));

        let p_i = rf("(1 + t)/(1 - t)^4");
        let mut p = p_i.clone();
        for (c, &m) in contribs.iter().zip(&mults) {
            p = &p + &c.value.scale(&ratio(m as i64, 1));
        }
        let got = solve_multiplicities(&p, &p_i, &contribs);
        prop_assert_eq!(got, Some(mults[..contribs.len()].to_vec()));
    }
}

#[test]
fn solver_rejects_fractional_and_negative() {
    let q = qs("1/2(1,1,1)");
    let c = qorb(&q, 1).unwrap();
    let zero = RationalFunction::zero();
    assert_eq!(solve_multiplicities(&c.value.scale(&ratio(1, 2)), &zero, &[c.clone()]), None);
    assert_eq!(solve_multiplicities(&c.value.scale(&ratio(-3, 1)), &zero, &[c.clone()]), None);
    assert_eq!(solve_multiplicities(&c.value.scale(&ratio(3, 1)), &zero, &[c]), Some(vec![3]));
}

fn sweep(u_max: i64, rule: KernelRule) -> Vec<wflag_core::search::Candidate> {
    let mut config = SearchConfig::new(FormatKind::G2, -1, 3).with_u_range(1, u_max);
    config.kernel_rule = rule;
    let out = search(&config).unwrap();
    assert!(out.failures.is_empty());
    out.candidates
}

#[test]
fn g2_fano_sweep_through_u3() {
    let found = sweep(3, KernelRule::Unrestricted);
    let smooth = found.iter().find(|c| c.x_weights == vec![1; 12]).expect("P^11 section");
    assert!(smooth.smooth && smooth.basket.is_empty());
    assert_eq!(smooth.degree, ratio(18, 1));

    let row2 = found
        .iter()
        .find(|c| c.x_weights == [1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 5] && c.basket == "9x1/2(1,1,1), 1/5(3,4,4)".parse().unwrap())
        .expect("second row");
    assert_eq!(row2.degree, ratio(9, 10));
    assert!(row2.has_kernel());

    for c in &found {
        assert!(c.verify().unwrap(), "{:?}", c);
    }
    // deterministic and already in canonical order
    assert_eq!(sweep(3, KernelRule::Unrestricted), found);
    let mut sorted = found.clone();
    sorted.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    assert_eq!(sorted, found);

    // the admissible rule never flags more than the unrestricted one
    let strict = sweep(3, KernelRule::Admissible);
    assert_eq!(strict.len(), found.len());
    for (s, u) in strict.iter().zip(&found) {
        assert!(s.kernels.iter().all(|k| u.kernels.contains(k)));
    }
}
