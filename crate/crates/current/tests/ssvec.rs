use std::collections::BTreeMap;

use current::*;
use itertools::Itertools;
use scalars::{q_coeff, rat, BigInt, BigRational, Scalar};

fn sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

// Oracle: 1/m! Σ_σ (sgn σ) Σ_i ∏_k (τ δ + s X[-1])_{i_k, i_σ(k)} applied to the vacuum
// right to left, τ acting as the translation derivation. No partitions involved.
fn tau_oracle(g: &LieData, m: usize, signed: bool, s: i64) -> UEnvElement {
    let x_sign = Scalar::from_int(s);
    let mut out = UEnvElement::zero();
    for sigma in (0..m).permutations(m) {
        let sg = if signed { sign(&sigma) } else { 1 };
        for idx in (0..m).map(|_| 0..g.n).multi_cartesian_product() {
            let mut v = UEnvElement::one();
            for k in (0..m).rev() {
                let (a, b) = (idx[k], idx[sigma[k]]);
                let mut next = UEnvElement::zero();
                if a == b {
                    next = next.add(&v.derive(g));
                }
                for (e, c) in g.entry(a, b) {
                    let c = Scalar::from_rational(c.clone());
                    next = next.add(&v.left_mul_factor(g, Factor::new(*e, 1)).scale(&(&c * &x_sign)));
                }
                v = next;
            }
            out = out.add(&v.scale(&Scalar::from_int(sg)));
        }
    }
    let norm = (1..=m as i64).product::<i64>();
    out.scale(&Scalar::from_rational(BigRational::new(1.into(), norm.into())))
}

fn crit(g: &LieData) -> Scalar {
    Scalar::from_rational(g.critical_level())
}

#[test]
fn matches_tau_expansion() {
    for n in [1usize, 2, 3] {
        let g = LieData::gl(n);
        for m in 1..=3u32 {
            assert_eq!(ss_vector_a(m, &g, Variant::Anti).unwrap(), tau_oracle(&g, m as usize, true, 1), "phi n={n} m={m}");
            assert_eq!(ss_vector_a(m, &g, Variant::Sym).unwrap(), tau_oracle(&g, m as usize, false, 1), "psi n={n} m={m}");
        }
    }
    let g = LieData::gl(2);
    assert_eq!(ss_vector_a(4, &g, Variant::Sym).unwrap(), tau_oracle(&g, 4, false, 1));
}

// With the sign (-1)^ℓ on the symmetrizer weights one gets the τ - X expansion instead.
// It is central too, but it is a different generator.
#[test]
fn signed_symmetrizer_weights_give_the_reflected_vector() {
    for n in [2usize, 3] {
        let g = LieData::gl(n);
        let x = Scalar::from_int(n as i64);
        for m in 1..=3u32 {
            let signed = partition_sum(&g, m, Variant::Sym, false, &|l| {
                let q = q_coeff(m, l, &x).unwrap();
                if l % 2 == 1 {
                    -q
                } else {
                    q
                }
            });
            assert_eq!(signed, tau_oracle(&g, m as usize, false, -1));
            assert!(is_central(&signed, &g, &crit(&g), m));
            assert_ne!(signed, ss_vector_a(m, &g, Variant::Sym).unwrap());
        }
    }
}

#[test]
fn golden_vectors() {
    let g = LieData::gl(2);
    assert_eq!(
        ss_vector_a(2, &g, Variant::Anti).unwrap().display(&g).to_string(),
        "E[1,1](-1)*E[2,2](-1) - E[2,1](-1)*E[1,2](-1) + E[2,2](-2)"
    );
    let g = LieData::sp(2).unwrap();
    assert_eq!(
        ss_vector_bc(2, &g).unwrap().display(&g).to_string(),
        "-F[1,1](-1)*F[1,1](-1) - 2*F[1,1](-2) - F[2,1](-1)*F[1,2](-1)"
    );
    let g = LieData::so(3);
    assert_eq!(
        ss_vector_bc(2, &g).unwrap().display(&g).to_string(),
        "F[1,1](-1)*F[1,1](-1) + F[1,1](-2) + 2*F[2,1](-1)*F[1,2](-1)"
    );
}

#[test]
fn antisymmetrizer_kills_long_traces() {
    let g = LieData::gl(2);
    for lambda in [vec![1, 1, 1], vec![2, 1, 1], vec![3, 2, 1]] {
        assert!(trace_term(&g, &lambda, Variant::Anti).is_zero(), "{lambda:?}");
    }
    assert!(!trace_term(&g, &[2, 1, 1], Variant::Sym).is_zero());
    assert!(ss_vector_a(3, &g, Variant::Anti).unwrap().is_zero());
}

#[test]
fn larger_degrees_are_central() {
    let g = LieData::gl(2);
    assert!(is_central(&ss_vector_a(4, &g, Variant::Sym).unwrap(), &g, &crit(&g), 4));
    let g = LieData::gl(3);
    assert!(is_central(&ss_vector_a(4, &g, Variant::Sym).unwrap(), &g, &crit(&g), 4));
    for g in [LieData::sp(4).unwrap(), LieData::so(3), LieData::so(5)] {
        let p = ss_vector_bc(4, &g).unwrap();
        assert!(!p.is_zero());
        assert!(is_central(&p, &g, &crit(&g), 4), "{g}");
    }
}

// Q_{m,ℓ}(n) with A in type A and Q_{m,ℓ}(-N) with A in type C. These are still central
// at m = 3 in type A and first fail at m = 4.
#[test]
fn unsigned_weights_are_not_central() {
    for n in [2usize, 3] {
        let g = LieData::gl(n);
        let x = Scalar::from_int(n as i64);
        let phi = partition_sum(&g, 3, Variant::Anti, false, &|l| q_coeff(3, l, &x).unwrap());
        assert!(is_central(&phi, &g, &crit(&g), 3));
        let phi = partition_sum(&g, 4, Variant::Anti, false, &|l| q_coeff(4, l, &x).unwrap());
        assert!(!is_central(&phi, &g, &crit(&g), 4));
    }
    let g = LieData::sp(4).unwrap();
    let x = Scalar::from_int(-4);
    let c = partition_sum(&g, 4, Variant::Anti, true, &|l| q_coeff(4, l, &x).unwrap());
    assert!(!is_central(&c, &g, &crit(&g), 4));
}

#[test]
fn class_sizes_by_brute_force() {
    for m in 1..=5usize {
        let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for p in (0..m).permutations(m) {
            let mut seen = vec![false; m];
            let mut cycles = Vec::new();
            for s in 0..m {
                if seen[s] {
                    continue;
                }
                let (mut len, mut i) = (0, s);
                while !seen[i] {
                    seen[i] = true;
                    i = p[i];
                    len += 1;
                }
                cycles.push(len);
            }
            cycles.sort_unstable_by(|a, b| b.cmp(a));
            *counts.entry(cycles).or_default() += 1;
        }
        let parts = partitions(m as u32);
        assert_eq!(parts.len(), counts.len());
        for lambda in parts {
            assert_eq!(cycle_class_size(&lambda), BigInt::from(counts[&lambda]), "{lambda:?}");
        }
    }
}

#[test]
fn interpolated_vectors_evaluate_to_classical() {
    for n in [1usize, 2, 3] {
        let g = LieData::gl(n);
        let q = rat(n as i64);
        for m in 1..=3 {
            for v in [Variant::Anti, Variant::Sym] {
                let t = ss_vector_interp(m, &g, v).unwrap();
                assert_eq!(t.eval_at(&q).unwrap(), ss_vector_a(m, &g, v).unwrap(), "n={n} m={m} {v:?}");
            }
        }
    }
    for g in [LieData::sp(2).unwrap(), LieData::so(3), LieData::sp(4).unwrap()] {
        let q = rat(g.n as i64);
        for m in [2, 4] {
            assert_eq!(ss_vector_interp_bc(m, &g).unwrap().eval_at(&q).unwrap(), ss_vector_bc(m, &g).unwrap());
        }
    }
}

#[test]
fn interpolated_weights_are_symbolic() {
    let g = LieData::gl(2);
    let t = ss_vector_interp(2, &g, Variant::Anti).unwrap();
    assert!(t.terms().any(|(_, c)| !c.is_constant()));
    // a non-integer evaluation is not central in gl_2 once m exceeds the rank
    let half = BigRational::new(5.into(), 2.into());
    for v in [Variant::Anti, Variant::Sym] {
        let off = ss_vector_interp(4, &g, v).unwrap().eval_at(&half).unwrap();
        assert!(!is_central(&off, &g, &crit(&g), 4), "{v:?}");
    }
}

#[test]
fn type_a_weight_identity() {
    for n in 1..=6i64 {
        for m in 1..=6u32 {
            for l in 1..=m {
                let w = weight_a(Variant::Anti, m, l, &Scalar::from_int(n));
                let binom = |a: i64, b: u32| -> BigRational {
                    if (b as i64) > a {
                        return rat(0);
                    }
                    let mut r = rat(1);
                    for k in 0..b as i64 {
                        r = r * rat(a - k) / rat(k + 1);
                    }
                    r
                };
                if (l as i64) <= n {
                    assert_eq!(w.as_constant().unwrap(), binom(n, m) / binom(n, l), "n={n} m={m} l={l}");
                }
            }
        }
    }
}

#[test]
fn top_degree_survives_symmetrization() {
    let g = LieData::gl(3);
    let p = ss_vector_a(3, &g, Variant::Anti).unwrap();
    assert_eq!(p.degree(), 3);
    let s = p.symmetrize().top_degree();
    assert!(!s.is_zero());
    assert!(s.terms().all(|(w, _)| w.len() == 3));
    // a commutator has no top-degree part
    let (a, b) = (g.index_of(0, 1).unwrap(), g.index_of(1, 0).unwrap());
    let x = UEnvElement::generator(a, 1);
    let y = UEnvElement::generator(b, 1);
    let comm = x.mul(&g, &y).sub(&y.mul(&g, &x));
    assert_eq!(comm.degree(), 1);
    assert!(x.mul(&g, &y).symmetrize().top_degree() == y.mul(&g, &x).symmetrize().top_degree());
}

#[test]
fn argument_errors() {
    assert_eq!(ss_vector_bc(3, &LieData::so(3)), Err(CurrentError::OddM(3)));
    assert_eq!(ss_vector_bc(0, &LieData::so(3)), Err(CurrentError::OddM(0)));
    assert_eq!(ss_vector_a(0, &LieData::gl(2), Variant::Anti), Err(CurrentError::ZeroDegree));
    assert!(matches!(ss_vector_a(2, &LieData::so(3), Variant::Anti), Err(CurrentError::WrongFamily(_))));
    assert!(matches!(ss_vector_bc(2, &LieData::gl(2)), Err(CurrentError::WrongFamily(_))));
    assert_eq!(LieData::sp(3).unwrap_err(), CurrentError::OddSymplectic(3));
}
