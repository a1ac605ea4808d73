use std::collections::BTreeMap;

use constacyclic::distance::{self, sweep_specs, DEFAULT_SEED};
use constacyclic::isometry::random_poly;
use constacyclic::{Code, CodeKind, CodeSpec, FieldParams, IsometryContext, Limits, QuotientParams};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn params(p: u32, m: usize, s: u32, alpha: &[u32]) -> QuotientParams {
    let field = FieldParams::new(p, m).unwrap();
    let alpha = field.element(alpha).unwrap();
    QuotientParams::new(field, s, alpha).unwrap()
}

fn small_rings() -> Vec<QuotientParams> {
    vec![
        params(2, 1, 1, &[1]),
        params(2, 1, 3, &[1]),
        params(2, 2, 2, &[0, 1]),
        params(2, 3, 1, &[0, 1]),
        params(3, 1, 2, &[2]),
        params(3, 2, 1, &[1, 1]),
        params(5, 1, 2, &[3]),
        params(7, 1, 1, &[5]),
    ]
}

fn ring_and_rng() -> impl Strategy<Value = (QuotientParams, ChaCha8Rng)> {
    (0..small_rings().len(), any::<u64>()).prop_map(|(k, seed)| (small_rings()[k].clone(), ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn adic_expansion_round_trips((q, mut rng) in ring_and_rng()) {
        let f = random_poly(&q, &mut rng);
        let coords = q.adic_expand(&f);
        prop_assert_eq!(coords.coords().len(), q.n());
        prop_assert_eq!(q.adic_collapse(&coords), f);
    }

    #[test]
    fn weight_dominates_both_parts((q, mut rng) in ring_and_rng()) {
        let f = random_poly(&q, &mut rng);
        let wa = q.residue_part(&f).iter().filter(|x| !x.is_zero()).count();
        let wb = q.u_part(&f).iter().filter(|x| !x.is_zero()).count();
        prop_assert!(f.weight() >= wa.max(wb));
        prop_assert!(f.weight() <= wa + wb);
    }

    #[test]
    fn isometry_is_a_weight_preserving_homomorphism((q, mut rng) in ring_and_rng()) {
        let ctx = IsometryContext::new(&q).unwrap();
        let src = &ctx.source;
        let f = random_poly(src, &mut rng);
        let g = random_poly(src, &mut rng);
        let (pf, pg) = (ctx.apply(&f).unwrap(), ctx.apply(&g).unwrap());
        prop_assert_eq!(pf.weight(), f.weight());
        prop_assert_eq!(ctx.apply(&src.add(&f, &g)).unwrap(), q.add(&pf, &pg));
        prop_assert_eq!(ctx.apply(&src.mul(&f, &g)).unwrap(), q.mul(&pf, &pg));
        prop_assert_eq!(ctx.invert(&pf).unwrap(), f);
    }

    #[test]
    fn unit_test_agrees_with_inverse((q, mut rng) in ring_and_rng()) {
        let f = random_poly(&q, &mut rng);
        // units are c(1 + m) with m nilpotent of index <= 2n, so f^((q-1) p^k) = 1
        // once p^k >= 2n; a nonunit stays in the maximal ideal
        let p = q.field().characteristic() as u64;
        let mut pk = 1;
        while pk < 2 * q.n() as u64 {
            pk *= p;
        }
        let units_order = (q.field().order() - 1) * pk;
        let is_unit = q.is_unit(&f);
        prop_assert_eq!(q.pow(&f, units_order) == q.one(), is_unit);
    }

    #[test]
    fn spans_are_ideals(k in 0usize..4, pick in any::<prop::sample::Index>()) {
        let q = [params(2, 1, 2, &[1]), params(3, 1, 1, &[2]), params(2, 2, 1, &[0, 1]), params(5, 1, 1, &[4])][k].clone();
        let specs = sweep_specs(&q, DEFAULT_SEED);
        let spec = pick.get(&specs);
        let code = Code::span(spec).unwrap();
        prop_assert!(code.is_ideal());
        for f in code.basis_polys() {
            prop_assert!(code.contains(&q.shift(&f)));
        }
    }
}

#[test]
fn binomial_powers_of_x_minus_one() {
    for q in small_rings() {
        let c = q.cyclic();
        let xm1 = c.sub(&c.x(), &c.one());
        let p = q.field().characteristic() as u64;
        for k in 0..=q.s() {
            let e = p.pow(k);
            let xe = if e as usize == c.n() {
                c.one()
            } else {
                c.monomial(e as usize, c.ring().one())
            };
            assert_eq!(c.pow(&xm1, e), c.sub(&xe, &c.one()));
        }
    }
}

#[test]
fn adic_base_is_nilpotent_of_index_n() {
    for q in small_rings() {
        let b = q.adic_base();
        let n = q.n() as u64;
        assert!(q.pow(&b, n).is_zero());
        assert!(!q.pow(&b, n - 1).is_zero());
    }
}

#[test]
fn cardinality_law_on_sweep_codes() {
    let limits = Limits::default();
    for q in [params(2, 1, 2, &[1]), params(3, 1, 1, &[2]), params(2, 2, 1, &[0, 1])] {
        let ambient = 2 * q.field().degree() * q.n();
        for spec in sweep_specs(&q, DEFAULT_SEED) {
            let code = Code::span(&spec).unwrap();
            let dual = code.dual_bruteforce(&limits).unwrap();
            assert_eq!(code.log_p_size() + dual.log_p_size(), ambient, "{spec}");
            assert_eq!(dual.params().alpha(), q.field().inv(q.alpha()).unwrap());
            assert!(dual.is_ideal(), "{spec}");
        }
    }
}

#[test]
fn type2_ideals_form_a_chain() {
    for q in small_rings() {
        let codes: Vec<Code> = (0..q.n())
            .map(|i| Code::span(&CodeSpec::type2(q.clone(), i).unwrap()).unwrap())
            .collect();
        for w in codes.windows(2) {
            assert!(w[1].row_space().is_subspace_of(q.field(), w[0].row_space()));
            assert_eq!(w[0].dim(), w[1].dim() + 1);
        }
        assert_eq!(codes[0].dim(), q.n());
    }
}

/// Invariants that pin down a monic ideal: i, the torsion exponent T, and
/// b^t h modulo b^T in adic coordinates.
fn ideal_key(spec: &CodeSpec) -> (u8, usize, usize, Vec<Vec<u32>>) {
    let q = &spec.params;
    match spec.kind {
        CodeKind::Zero => (0, 0, 0, vec![]),
        CodeKind::Unit => (1, 0, 0, vec![]),
        CodeKind::Type2 => (2, spec.i, 0, vec![]),
        CodeKind::Type3 | CodeKind::Type4 => {
            let big_t = distance::torsion_exponent(spec).unwrap();
            let h = q.from_parts(&spec.h, &[]).unwrap();
            let tail = q.mul(&q.pow(&q.adic_base(), spec.t as u64), &h);
            let coords = q.adic_expand(&tail);
            let low = coords.coords()[..big_t].iter().map(|c| c.a.to_vec()).collect();
            (3, spec.i, big_t, low)
        }
    }
}

/// Two sweep specs give the same ideal exactly when they share i, the
/// torsion exponent T and b^t h mod b^T. Specs differing only above b^T
/// (e.g. Type 3 with the same i and T but different h of high degree)
/// therefore coincide.
#[test]
fn specs_give_equal_ideals_iff_invariants_agree() {
    for q in [params(2, 1, 2, &[1]), params(3, 1, 1, &[1]), params(3, 1, 1, &[2])] {
        let specs = sweep_specs(&q, DEFAULT_SEED);
        let codes: Vec<Code> = specs.iter().map(|s| Code::span(s).unwrap()).collect();
        for (j, a) in specs.iter().enumerate() {
            for (k, b) in specs.iter().enumerate().skip(j + 1) {
                let same = codes[j].same_space(&codes[k]);
                assert_eq!(same, ideal_key(a) == ideal_key(b), "{a} vs {b}");
            }
        }
    }
}

#[test]
fn published_formula_ignores_shift_and_h() {
    let q = params(3, 1, 2, &[1]);
    let mut by_i: BTreeMap<(CodeKind, usize), Vec<u64>> = BTreeMap::new();
    for spec in sweep_specs(&q, DEFAULT_SEED) {
        let key = match spec.kind {
            CodeKind::Type3 => (CodeKind::Type3, spec.i),
            CodeKind::Type4 => (CodeKind::Type4, spec.omega),
            _ => continue,
        };
        by_i.entry(key).or_default().push(distance::spec_distance_formula(&spec).unwrap());
    }
    for values in by_i.values() {
        assert!(values.windows(2).all(|w| w[0] == w[1]));
    }
}

/// The brute-force distance of a Type 3 ideal does depend on t and h.
#[test]
fn oracle_depends_on_shift_and_h() {
    let limits = Limits::default();
    let q = params(2, 1, 2, &[1]);
    let one = vec![q.field().one()];
    let oracle = |spec: CodeSpec| Code::span(&spec).unwrap().min_distance_oracle(&limits).unwrap();
    assert_eq!(oracle(CodeSpec::type3(q.clone(), 3, 0, vec![]).unwrap()), 4);
    assert_eq!(oracle(CodeSpec::type3(q.clone(), 3, 2, one.clone()).unwrap()), 4);
    assert_eq!(oracle(CodeSpec::type3(q.clone(), 3, 1, one.clone()).unwrap()), 2);
    assert_eq!(oracle(CodeSpec::type3(q.clone(), 3, 0, one).unwrap()), 2);
}

#[test]
fn torsion_exponent_distance_matches_oracle() {
    let limits = Limits::default();
    for q in [
        params(2, 1, 3, &[1]),
        params(2, 2, 2, &[0, 1]),
        params(3, 1, 1, &[2]),
        params(3, 2, 1, &[1, 1]),
        params(5, 1, 1, &[3]),
        params(7, 1, 1, &[1]),
    ] {
        let report = distance::verify_sweep(&q, &limits, DEFAULT_SEED).unwrap();
        for e in &report.entries {
            if let Some(d) = e.oracle {
                assert_eq!(d, e.torsion_exponent_distance, "{}", e.spec);
            }
        }
    }
}

#[test]
fn isometry_transports_oracle_distance() {
    let limits = Limits::default();
    for q in [params(3, 1, 1, &[2]), params(2, 2, 2, &[1, 1]), params(5, 1, 1, &[2])] {
        let ctx = IsometryContext::new(&q).unwrap();
        for spec in sweep_specs(&ctx.source, DEFAULT_SEED) {
            let code = Code::span(&spec).unwrap();
            if !code.fits_enumeration(&limits) {
                continue;
            }
            let image = ctx.map_code(&code).unwrap();
            assert_eq!(
                image.min_distance_oracle(&limits).unwrap(),
                code.min_distance_oracle(&limits).unwrap(),
                "{spec}"
            );
        }
    }
}
