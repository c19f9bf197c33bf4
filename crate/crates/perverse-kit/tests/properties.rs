//! Property suites for the module invariants: rank bookkeeping, signature
//! behavior under negation and quotients, pencil limits, the long exact
//! sequence of a cone with explicit connecting maps, and the symmetry
//! properties of the normal-crossing stalk computations.

mod common;

use perverse_kit::complexes::{cone, cone_inclusion, cone_projection, ChainMap};
use perverse_kit::forms::{zariski_check, CurveConfig, FiberCycle};
use perverse_kit::linalg::{
    rat, subspace_limit, ParamMatrix, RationalMatrix, Subspace,
};
use perverse_kit::localsys::{ic_stalk_normal_crossing, koszul_cohomology};
use proptest::prelude::*;
use rand::Rng;

fn small_symmetric(n: usize) -> impl Strategy<Value = RationalMatrix> {
    proptest::collection::vec(-4i64..=4, n * (n + 1) / 2).prop_map(move |upper| {
        let mut m = RationalMatrix::zeros(n, n);
        let mut it = upper.into_iter();
        for r in 0..n {
            for c in r..n {
                let v = rat(it.next().expect("enough entries"));
                m.set(r, c, v.clone());
                m.set(c, r, v);
            }
        }
        m
    })
}

proptest! {
    #[test]
    fn rank_plus_kernel_is_columns(rows in 0usize..5, cols in 0usize..5, seed in any::<u64>()) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        use rand::SeedableRng;
        let m = common::random_matrix(&mut rng, rows, cols, 4);
        let (rank, kernel, image) = m.rank_kernel_image();
        prop_assert_eq!(rank + kernel.dim(), cols);
        prop_assert_eq!(image.dim(), rank);
        // Kernel vectors are killed, image contains all columns.
        for j in 0..kernel.dim() {
            let v = m.mul_vector(&kernel.basis().column(j)).expect("shape");
            prop_assert!(v.iter().all(num::Zero::is_zero));
        }
        for c in 0..cols {
            prop_assert!(image.contains_vector(&m.column(c)));
        }
    }

    #[test]
    fn negation_swaps_signature(m in small_symmetric(4)) {
        let sig = m.signature().expect("symmetric");
        let neg = m.scale(&rat(-1)).signature().expect("symmetric");
        prop_assert_eq!(neg, sig.swapped());
    }

    #[test]
    fn quotient_form_drops_one_radical_dimension(core in small_symmetric(3), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        // Embed the core with an extra radical direction and change basis.
        let n = core.rows() + 1;
        let mut padded = RationalMatrix::zeros(n, n);
        for r in 0..core.rows() {
            for c in 0..core.cols() {
                padded.set(r, c, core.get(r, c).clone());
            }
        }
        let p = common::random_invertible(&mut rng, n);
        let m = p.transpose().mul(&padded).expect("shape").mul(&p).expect("shape");
        let v = p.inverse().expect("invertible").column(n - 1);
        let q = m.quotient_form(&v).expect("radical vector");
        let full = m.signature().expect("symmetric");
        let quot = q.signature().expect("symmetric");
        prop_assert_eq!(full.positive, quot.positive);
        prop_assert_eq!(full.negative, quot.negative);
        prop_assert_eq!(full.zero, quot.zero + 1);
    }

    #[test]
    fn koszul_euler_characteristic_vanishes(seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let ls = common::random_commuting_pair(&mut rng, 3);
        let k = koszul_cohomology(&ls);
        prop_assert_eq!(k.h0 + k.h2, k.h1);
    }

    #[test]
    fn stalk_is_symmetric_in_the_monodromies(seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let ls = common::random_commuting_pair(&mut rng, 3);
        prop_assert_eq!(
            ic_stalk_normal_crossing(&ls),
            ic_stalk_normal_crossing(&ls.swapped())
        );
    }
}

#[test]
fn pencil_kernel_limits_have_generic_dimension_and_land_in_the_kernel() {
    let mut rng = common::seeded_rng();
    for _ in 0..60 {
        let rows = rng.gen_range(1..=3);
        let cols = rng.gen_range(1..=4);
        let a = common::random_matrix(&mut rng, rows, cols, 2);
        let b = common::random_matrix(&mut rng, rows, cols, 2);
        let pencil = ParamMatrix::pencil(&a, &b).expect("same shape");
        let kernel = pencil.param_kernel();
        if kernel.is_empty() {
            continue;
        }
        let limit = subspace_limit(&kernel).expect("independent columns");
        assert_eq!(limit.dim(), kernel.len(), "limit keeps the generic dimension");
        // The limit is contained in the kernel of the member at zero.
        let (_, ker0, _) = a.rank_kernel_image();
        assert!(ker0.contains(&limit));
    }
}

#[test]
fn semisimple_pairs_have_matching_ends() {
    // Diagonal monodromies: the invariants and coinvariants agree.
    let mut rng = common::seeded_rng();
    for _ in 0..40 {
        let n = rng.gen_range(1..=4);
        let diag = |rng: &mut rand::rngs::StdRng| {
            let mut m = RationalMatrix::zeros(n, n);
            for i in 0..n {
                let choices = [-2, -1, 1, 2, 3];
                m.set(i, i, rat(choices[rng.gen_range(0..choices.len())]));
            }
            m
        };
        let t1 = diag(&mut rng);
        let t2 = diag(&mut rng);
        let ls = perverse_kit::localsys::TorusLocalSystem::new(t1, t2).expect("diagonal pair");
        let k = koszul_cohomology(&ls);
        assert_eq!(k.h0, k.h2);
    }
}

#[test]
fn cone_long_exact_sequence_is_exact() {
    let mut rng = common::seeded_rng();
    for case in 0..30 {
        let f = common::random_chain_map(&mut rng, 4, 3);
        let a = f.source().clone();
        let b = f.target().clone();
        let c = cone(&f);
        let ha = a.cohomology();
        let hb = b.cohomology();
        let hc = c.cohomology();

        // Alternating sum of the three rows vanishes.
        let lo = c.lo().min(a.lo()).min(b.lo()) - 1;
        let hi = c.hi().max(a.hi()).max(b.hi()) + 1;
        let mut alternating = 0i64;
        for k in lo..=hi {
            let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
            alternating += sign
                * (ha.dim_at(k) as i64 - hb.dim_at(k) as i64 + hc.dim_at(k) as i64);
        }
        assert_eq!(alternating, 0, "case {case}");

        // Exactness at every node, with the connecting map realized by the
        // projection onto the shifted source.
        let include = cone_inclusion(&f);
        let project = cone_projection(&f);
        let a1 = project.target().clone();
        let ha1 = a1.cohomology();
        let shifted = ChainMap::new(
            a1.clone(),
            b.shift(1),
            (a1.lo()..=a1.hi()).map(|k| (k, f.component(k + 1))).collect(),
        )
        .expect("shifted map commutes");
        let hb1 = b.shift(1).cohomology();
        for k in lo..=hi {
            let m_f = f.induced_on_cohomology(k, &ha, &hb);
            let m_i = include.induced_on_cohomology(k, &hb, &hc);
            let m_p = project.induced_on_cohomology(k, &hc, &ha1);
            let m_s = shifted.induced_on_cohomology(k, &ha1, &hb1);
            // Exactness at H(B): ker(include) = im(f).
            exactness(&m_f, &m_i, &format!("case {case}, H^{k}(target)"));
            // Exactness at H(cone): ker(project) = im(include).
            exactness(&m_i, &m_p, &format!("case {case}, H^{k}(cone)"));
            // Exactness at H(shifted source): ker(shifted f) = im(project).
            exactness(&m_p, &m_s, &format!("case {case}, H^{k}(shift)"));
        }
    }
}

fn exactness(incoming: &RationalMatrix, outgoing: &RationalMatrix, what: &str) {
    // im(incoming) = ker(outgoing): composite zero plus matching ranks.
    let composite = outgoing.mul(incoming).expect("chain of induced maps");
    assert!(composite.is_zero(), "{what}: composite nonzero");
    let ker_dim = incoming.rows() - outgoing.rank();
    assert_eq!(incoming.rank(), ker_dim, "{what}: image smaller than kernel");
}

#[test]
fn zariski_verdict_matches_quotient_radical() {
    // Weighted graph configurations with the cycle class in the radical.
    let mut rng = common::seeded_rng();
    for _ in 0..40 {
        let n = rng.gen_range(1..=5);
        let mut adj = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let w = rat(rng.gen_range(0..=2));
                adj.set(i, j, w.clone());
                adj.set(j, i, w);
            }
        }
        let mult: Vec<_> = (0..n).map(|_| rat(rng.gen_range(1..=3))).collect();
        let mut m = adj.clone();
        for i in 0..n {
            let mut weighted = rat(0);
            for (j, multiplier) in mult.iter().enumerate() {
                if i != j {
                    weighted += adj.get(i, j) * multiplier;
                }
            }
            m.set(i, i, -(weighted / &mult[i]));
        }
        let fiber = FiberCycle::new(
            CurveConfig::new(m).expect("symmetric"),
            mult,
        )
        .expect("positive multiplicities");
        let report = zariski_check(&fiber).expect("radical by construction");
        assert_eq!(
            report.verdict.passed(),
            report.quotient_signature.zero == 0,
            "verdict must mirror the quotient radical"
        );
        if report.verdict.passed() {
            assert_eq!(report.rank_cl + 1, n);
        }
    }
}

#[test]
fn subspace_equality_is_mutual_containment_not_basis_equality() {
    let a = Subspace::span(
        3,
        &RationalMatrix::from_i64_rows(&[&[1, 1], &[0, 2], &[0, 0]]),
    )
    .expect("span");
    let b = Subspace::span(
        3,
        &RationalMatrix::from_i64_rows(&[&[2, 1], &[2, 3], &[0, 0]]),
    )
    .expect("span");
    assert!(a.equals(&b));
    assert_ne!(a.basis(), b.basis());
}
