use itertools::Itertools;
use scalars::{factorial, q_coeff, BigInt, BigRational, Scalar};

use crate::{CurrentError, Factor, LieData, LieFamily, UEnvElement};

/// Partitions of `m` with parts in non-increasing order.
pub fn partitions(m: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

/// `z_λ = ∏_k k^{m_k} m_k!`.
pub fn z_lambda(lambda: &[u32]) -> BigInt {
    let mut z = BigInt::from(1);
    for (k, group) in &lambda.iter().chunk_by(|x| **x) {
        let mk = group.count() as u32;
        z *= BigInt::from(k).pow(mk) * factorial(mk);
    }
    z
}

/// Number of permutations of `S_m` with cycle type `λ`.
pub fn cycle_class_size(lambda: &[u32]) -> BigInt {
    let m: u32 = lambda.iter().sum();
    factorial(m) / z_lambda(lambda)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Antisymmetrizer `A^{(ℓ)}`.
    Anti,
    /// Symmetrizer `H^{(ℓ)}`.
    Sym,
}

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

/// `tr_{1..ℓ} X^{(ℓ)} F[-λ_1]_1 ⋯ F[-λ_ℓ]_ℓ` through the index-sum formula
/// `1/ℓ! Σ_σ (sgn σ) Σ_i ∏_k F_{i_k, i_{σ⁻¹(k)}} t^{-λ_k}`, the product taken in tensor-factor order.
pub fn trace_term(g: &LieData, lambda: &[u32], variant: Variant) -> UEnvElement {
    let l = lambda.len();
    let n = g.n;
    let mut out = UEnvElement::zero();
    let norm = Scalar::from_rational(BigRational::new(BigInt::from(1), factorial(l as u32)));
    for sigma in (0..l).permutations(l) {
        let mut inv = vec![0; l];
        for (k, s) in sigma.iter().enumerate() {
            inv[*s] = k;
        }
        let sg = match variant {
            Variant::Anti => Scalar::from_int(sign(&sigma)),
            Variant::Sym => Scalar::one(),
        };
        let c = &sg * &norm;
        for idx in (0..l).map(|_| 0..n).multi_cartesian_product() {
            // each F_ij is a signed multiple of at most one basis element
            let mut word = Vec::with_capacity(l);
            let mut coeff = c.clone();
            let mut vanishes = false;
            for k in 0..l {
                let e = g.entry(idx[k], idx[inv[k]]);
                match e.first() {
                    Some((a, q)) => {
                        word.push(Factor::new(*a, lambda[k]));
                        coeff = coeff.scale_rational(q);
                    }
                    None => {
                        vanishes = true;
                        break;
                    }
                }
            }
            if !vanishes {
                out.add_word(g, word, coeff);
            }
        }
    }
    out
}

/// `Σ_{λ ⊢ m} c_λ w(ℓ(λ)) · tr X^{(ℓ)} F[-λ_1] ⋯ F[-λ_ℓ]`, restricted to even `ℓ` when `even_only`.
pub fn partition_sum(
    g: &LieData,
    m: u32,
    variant: Variant,
    even_only: bool,
    weight: &dyn Fn(u32) -> Scalar,
) -> UEnvElement {
    let mut out = UEnvElement::zero();
    for lambda in partitions(m) {
        let l = lambda.len() as u32;
        if even_only && l % 2 == 1 {
            continue;
        }
        let w = weight(l);
        if w.is_zero() {
            continue;
        }
        let c = Scalar::from_rational(BigRational::from_integer(cycle_class_size(&lambda)));
        out = out.add(&trace_term(g, &lambda, variant).scale(&(&c * &w)));
    }
    out
}

/// The Type A weight at rank parameter `x`: `(-1)^{m-ℓ} Q_{m,ℓ}(-x)` for the
/// antisymmetrizer and `Q_{m,ℓ}(x)` for the symmetrizer.
pub fn weight_a(variant: Variant, m: u32, l: u32, x: &Scalar) -> Scalar {
    match variant {
        Variant::Anti => {
            let q = q_coeff(m, l, &-x.clone()).expect("1 <= l <= m");
            if (m - l) % 2 == 0 {
                q
            } else {
                -q
            }
        }
        Variant::Sym => q_coeff(m, l, x).expect("1 <= l <= m"),
    }
}

/// `φ_{m,n}` (antisymmetrizer) or `ψ_{m,n}` (symmetrizer) in `gl_n`.
pub fn ss_vector_a(m: u32, g: &LieData, variant: Variant) -> Result<UEnvElement, CurrentError> {
    if g.family != LieFamily::GlA {
        return Err(CurrentError::WrongFamily(g.to_string()));
    }
    if m == 0 {
        return Err(CurrentError::ZeroDegree);
    }
    let x = Scalar::from_int(g.n as i64);
    Ok(partition_sum(g, m, variant, false, &|l| weight_a(variant, m, l, &x)))
}

/// The Types B/C weight at `x`: `Q_{m,ℓ}(x - 1)` for `so` and `Q_{m,ℓ}(-x - 1)` for `sp`.
pub fn weight_bc(family: LieFamily, m: u32, l: u32, x: &Scalar) -> Scalar {
    match family {
        LieFamily::SpC => q_coeff(m, l, &(-x.clone() - Scalar::one())).expect("1 <= l <= m"),
        _ => q_coeff(m, l, &(x - &Scalar::one())).expect("1 <= l <= m"),
    }
}

fn bc_variant(family: LieFamily) -> Variant {
    match family {
        LieFamily::SpC => Variant::Anti,
        _ => Variant::Sym,
    }
}

/// `φ^C_{m}` in `sp_N` or `φ^B_{m}` in `so_N`, for even `m`.
pub fn ss_vector_bc(m: u32, g: &LieData) -> Result<UEnvElement, CurrentError> {
    if g.family == LieFamily::GlA {
        return Err(CurrentError::WrongFamily(g.to_string()));
    }
    if m == 0 || m % 2 == 1 {
        return Err(CurrentError::OddM(m));
    }
    let x = Scalar::from_int(g.n as i64);
    Ok(partition_sum(g, m, bc_variant(g.family), true, &|l| weight_bc(g.family, m, l, &x)))
}

/// `φ_{m,T}` or `ψ_{m,T}` with weights left symbolic in `T`, realized in `gl_n`.
pub fn ss_vector_interp(m: u32, g: &LieData, variant: Variant) -> Result<UEnvElement, CurrentError> {
    if g.family != LieFamily::GlA {
        return Err(CurrentError::WrongFamily(g.to_string()));
    }
    if m == 0 {
        return Err(CurrentError::ZeroDegree);
    }
    Ok(partition_sum(g, m, variant, false, &|l| weight_a(variant, m, l, &Scalar::t())))
}

/// The Types B/C vector with symbolic weights, realized in `g`.
pub fn ss_vector_interp_bc(m: u32, g: &LieData) -> Result<UEnvElement, CurrentError> {
    if g.family == LieFamily::GlA {
        return Err(CurrentError::WrongFamily(g.to_string()));
    }
    if m == 0 || m % 2 == 1 {
        return Err(CurrentError::OddM(m));
    }
    Ok(partition_sum(g, m, bc_variant(g.family), true, &|l| weight_bc(g.family, m, l, &Scalar::t())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=6).map(|m| partitions(m).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn class_sizes() {
        assert_eq!(cycle_class_size(&[2, 1]), BigInt::from(3));
        assert_eq!(cycle_class_size(&[1, 1, 1]), BigInt::from(1));
        assert_eq!(cycle_class_size(&[2, 2]), BigInt::from(3));
        assert_eq!(cycle_class_size(&[4]), BigInt::from(6));
    }
}
