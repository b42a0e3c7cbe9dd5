use diffalg::{DiffPoly, GenId};
use psido::PsiDO;

use crate::{LambdaPoly, PvaError};

/// `A(F) = (LF)_+ L - L (FL)_+`, with the result horizon capped at `cap`.
///
/// `F` may carry any shift differing from `-α` by an integer.
pub fn adler(l: &PsiDO, f: &PsiDO, cap: Option<i64>) -> Result<PsiDO, PvaError> {
    let f = f.reshift(psido_neg(l))?;
    let lf = l.mul_to(&f, Some(1))?.pos_part()?;
    let fl = f.mul_to(l, Some(1))?.pos_part()?;
    let a = lf.mul_to(l, cap)?;
    let b = l.mul_to(&fl, cap)?;
    Ok(a.sub(&b)?)
}

/// The second form `L (FL)_- - (LF)_- L` of the same map.
pub fn adler_negative_form(l: &PsiDO, f: &PsiDO, cap: Option<i64>) -> Result<PsiDO, PvaError> {
    let f = f.reshift(psido_neg(l))?;
    let fl = f.mul_to(l, cap)?.neg_part()?;
    let lf = l.mul_to(&f, cap)?.neg_part()?;
    let a = l.mul_to(&fl, cap)?;
    let b = lf.mul_to(l, cap)?;
    Ok(a.sub(&b)?)
}

fn psido_neg(l: &PsiDO) -> scalars::ShiftExponent {
    scalars::ShiftExponent::ZERO - l.shift()
}

/// `H_{ab}(λ)`, read from `H_{ab}(∂) f = Res(A(∂^{-α+a} ∘ f) ∘ ∂^{-α+b})`.
///
/// The residue is the offset `b+1` coefficient of `A(∂^{-α+a} ∘ f)`, which is
/// linear in the fresh generator `f`; the coefficient of `f^{(p)}` is that of `λ^p`.
pub fn h_entry(l: &PsiDO, a: i64, b: i64) -> Result<LambdaPoly, PvaError> {
    let f = DiffPoly::gen(GenId::fresh());
    let shift = psido_neg(l) + a;
    let big_f = PsiDO::d_pow(shift).mul_to(&PsiDO::function(f.clone()), Some(a + 1))?;
    let res = adler(l, &big_f, Some(b + 2))?.coeff(b + 1)?;
    let mut out = LambdaPoly::zero();
    if let Some(top) = res.max_order(GenId::fresh()) {
        for p in 0..=top {
            out.add_term(p, res.partial(GenId::fresh(), p));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use psido::Horizon;
    use scalars::ShiftExponent;

    fn rank_one() -> PsiDO {
        let u = DiffPoly::gen(GenId::u(0));
        PsiDO::from_terms(ShiftExponent::int(1), vec![(0, DiffPoly::one()), (1, u)], Horizon::Exact)
    }

    #[test]
    fn rank_one_adler_on_inverse_d() {
        let f = DiffPoly::gen(GenId::fresh());
        let big_f = PsiDO::d_pow((-1).into()).mul_to(&PsiDO::function(f.clone()), Some(1)).unwrap();
        let a = adler(&rank_one(), &big_f, None).unwrap();
        assert_eq!(a, PsiDO::from_terms(1.into(), vec![(1, -f.derive())], Horizon::Exact));
    }

    #[test]
    fn deep_negative_input_gives_zero() {
        let f = PsiDO::term((-4).into(), DiffPoly::gen(GenId::fresh()));
        let a = adler(&rank_one(), &f, Some(3)).unwrap();
        assert!(a.is_zero());
    }

    #[test]
    fn rank_one_entry_is_minus_lambda() {
        let h = h_entry(&rank_one(), 0, 0).unwrap();
        assert_eq!(h, LambdaPoly::lambda().neg());
    }
}
