use scalars::Scalar;

use crate::{Factor, LieData, UEnvElement};

/// `x t^m` acting on a vacuum-module element at level `k`.
///
/// `[x t^m, y t^{-r}] = [x,y] t^{m-r} + m δ_{m,r} k B(x,y)`, and non-negative
/// modes annihilate the vacuum.
pub fn affine_act(g: &LieData, x: usize, m: u32, level: &Scalar, p: &UEnvElement) -> UEnvElement {
    let form = |a: usize, b: usize| level * &Scalar::from_rational(g.form(a, b));
    affine_act_form(g, x, m, &form, p)
}

/// [`affine_act`] with an arbitrary invariant form `κ` in place of `k B`.
pub fn affine_act_form(
    g: &LieData,
    x: usize,
    m: u32,
    form: &dyn Fn(usize, usize) -> Scalar,
    p: &UEnvElement,
) -> UEnvElement {
    let mut out = UEnvElement::zero();
    for (w, c) in p.terms() {
        out = out.add(&act_word(g, x, m, form, w).scale(c));
    }
    out
}

fn act_word(g: &LieData, x: usize, m: u32, form: &dyn Fn(usize, usize) -> Scalar, w: &[Factor]) -> UEnvElement {
    let Some((&f, rest)) = w.split_first() else {
        return UEnvElement::zero();
    };
    let rest_elt = || {
        let mut e = UEnvElement::zero();
        e.add_word(g, rest.to_vec(), Scalar::one());
        e
    };
    let mut out = UEnvElement::zero();
    for (d, k) in g.bracket(x, f.basis) {
        let k = Scalar::from_rational(k.clone());
        let part = if m < f.depth {
            rest_elt().left_mul_factor(g, Factor::new(*d, f.depth - m))
        } else {
            act_word(g, *d, m - f.depth, form, rest)
        };
        out = out.add(&part.scale(&k));
    }
    if m == f.depth && m > 0 {
        let b = form(x, f.basis);
        if !b.is_zero() {
            out = out.add(&rest_elt().scale(&(b * Scalar::from_int(m as i64))));
        }
    }
    let inner = act_word(g, x, m, form, rest);
    out.add(&inner.left_mul_factor(g, f))
}

/// Whether `x t^m · p = 0` for every basis element `x` and `0 <= m <= max_mode`.
pub fn is_central(p: &UEnvElement, g: &LieData, level: &Scalar, max_mode: u32) -> bool {
    central_defects(p, g, level, max_mode).is_empty()
}

/// The nonzero actions `(x, m, x t^m · p)` that obstruct centrality.
pub fn central_defects(p: &UEnvElement, g: &LieData, level: &Scalar, max_mode: u32) -> Vec<(usize, u32, UEnvElement)> {
    let jobs: Vec<(usize, u32)> = (0..g.dim()).flat_map(|x| (0..=max_mode).map(move |m| (x, m))).collect();
    let results: Vec<Option<(usize, u32, UEnvElement)>> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .chunks(jobs.len().div_ceil(8).max(1))
            .map(|chunk| {
                s.spawn(move || {
                    chunk
                        .iter()
                        .map(|&(x, m)| {
                            let r = affine_act(g, x, m, level, p);
                            (!r.is_zero()).then_some((x, m, r))
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    results.into_iter().flatten().collect()
}
