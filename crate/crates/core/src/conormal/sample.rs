use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use super::{conormal_equations_test, is_cotangent_point, ConormalPoint};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Subspace, SymplecticForm};
use crate::profile::{root_generator, uw_space};
use crate::weyl::{is_minimal_rep, GrassContext, Permutation};

/// Number of root-group factors in a sampled symplectic Borel element.
const ROOT_FACTORS: usize = 25;

/// `n_w` with `n_w e_a = ± e_{w(a)}`. In type C the sign on `e_ā` is `-1` when
/// `w(a) > d`, which makes the matrix symplectic; in type A all signs are `+1`.
pub fn signed_permutation_matrix(w: &Permutation, ctx: &GrassContext, field: Field) -> Matrix {
    let n = w.n();
    let mut m = Matrix::zeros(field, n, n);
    for a in 1..=n {
        let negative = ctx.is_type_c() && a > ctx.d() && w.at(n + 1 - a) > ctx.d();
        let s = if negative { field.one().neg() } else { field.one() };
        m.set(w.at(a) - 1, a - 1, &s);
    }
    m
}

/// `diag(a_1, ..., a_d, a_d^{-1}, ..., a_1^{-1})` with random nonzero `a_i`.
pub fn torus_element<R: Rng + ?Sized>(field: Field, d: usize, rng: &mut R) -> Matrix {
    let n = 2 * d;
    let mut m = Matrix::zeros(field, n, n);
    for i in 0..d {
        let a = field.random_nonzero(rng);
        m.set(n - 1 - i, n - 1 - i, &a.inv().expect("nonzero"));
        m.set(i, i, &a);
    }
    m
}

/// Positive-root generators of `𝔰𝔭_{2d}` for the upper-triangular Borel.
pub(crate) fn symplectic_positive_roots(field: Field, d: usize) -> Vec<Matrix> {
    let n = 2 * d;
    let mut out = Vec::new();
    for i in 1..=d {
        for j in i..=d {
            out.push(root_generator(field, n, (i, n + 1 - j), true));
            if i < j {
                // ε_i - ε_j
                let a = Matrix::elementary(field, n, i, j);
                let b = Matrix::elementary(field, n, n + 1 - j, n + 1 - i);
                out.push(&a - &b);
            }
        }
    }
    out
}

/// A random element of the upper-triangular Borel (of `Sp` in type C).
pub fn borel_element<R: Rng + ?Sized>(ctx: &GrassContext, field: Field, rng: &mut R) -> Matrix {
    let n = ctx.n();
    if !ctx.is_type_c() {
        let mut b = Matrix::zeros(field, n, n);
        for r in 0..n {
            b.set(r, r, &field.random_nonzero(rng));
            for c in r + 1..n {
                b.set(r, c, &field.random_element(rng));
            }
        }
        return b;
    }
    let roots = symplectic_positive_roots(field, ctx.d());
    let id = Matrix::identity(field, n);
    let mut b = torus_element(field, ctx.d(), rng);
    for _ in 0..ROOT_FACTORS {
        let x = &roots[rng.random_range(0..roots.len())];
        let t = field.random_element(rng);
        // Root generators square to zero, so I + tX is the group element.
        b = &b * &(&id + &x.scale(&t));
    }
    b
}

/// A point `(g E(d), g x g^{-1})` with `g = b n_w`, `b` a random Borel element
/// and `x` a random element of `𝔲_w`. Deterministic in `seed`.
pub fn sample_conormal_point(w: &Permutation, ctx: &GrassContext, field: Field, seed: u64) -> Result<ConormalPoint> {
    if !is_minimal_rep(w, ctx) {
        return Err(Error::usage(format!("{w} is not a minimal representative for {ctx}")));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let (n, d) = (ctx.n(), ctx.d());
    let nw = signed_permutation_matrix(w, ctx, field);
    let b = borel_element(ctx, field, &mut rng);
    if ctx.is_type_c() {
        let form = SymplecticForm::new(field, d)?;
        if !form.preserves(&nw) || !form.preserves(&b) {
            return Err(Error::contradiction("sampled group element is not symplectic"));
        }
    }
    let uw = uw_space(w, ctx, field)?;
    let mut x = Matrix::zeros(field, n, n);
    for g in &uw.basis {
        x = &x + &g.scale(&field.random_element(&mut rng));
    }
    let g = &b * &nw;
    let ginv = g.inverse().map_err(|_| Error::contradiction("sampled group element is singular"))?;
    let v = Subspace::standard(field, n, d).apply(&g)?;
    let y = &(&g * &x) * &ginv;
    if !is_cotangent_point(&v, &y, ctx) {
        return Err(Error::contradiction(format!("sample for {w} is not a cotangent point")));
    }
    let pt = ConormalPoint::new_unchecked(v, y);
    if !conormal_equations_test(&pt, w, ctx)? {
        return Err(Error::contradiction(format!("sample for {w} fails the conormal equations")));
    }
    Ok(pt)
}
