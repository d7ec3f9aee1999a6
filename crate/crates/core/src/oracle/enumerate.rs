//! Exhaustive enumeration of subspaces, cotangent fibres and flags over a
//! prime field.

use super::Budget;
use crate::conormal::quiver_holds;
use crate::error::{Error, Result};
use crate::exactlin::{Field, FieldKind, Matrix, Scalar, Subspace, SymplecticForm};
use crate::profile::FlagShape;
use crate::schubert::{in_flag_schubert, meets_targets, RankTargets};
use crate::weyl::{GrassContext, Permutation};

/// The Gaussian binomial `[n choose d]_p`, saturating at `u128::MAX`.
pub fn gaussian_binomial(n: usize, d: usize, p: u64) -> u128 {
    if d > n {
        return 0;
    }
    let p = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        let a = p.checked_pow((n - i) as u32).map(|v| v - 1);
        let b = p.checked_pow((i + 1) as u32).map(|v| v - 1);
        match (a.and_then(|a| num.checked_mul(a)), b.and_then(|b| den.checked_mul(b))) {
            (Some(x), Some(y)) => {
                let g = gcd(x, y);
                num = x / g;
                den = y / g;
            }
            _ => return u128::MAX,
        }
    }
    num / den
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `p^e`, saturating.
pub(crate) fn power(p: u64, e: usize) -> u128 {
    u32::try_from(e)
        .ok()
        .and_then(|e| (p as u128).checked_pow(e))
        .unwrap_or(u128::MAX)
}

/// Number of Lagrangian subspaces of `𝔽_p^{2d}`: `Π (p^i + 1)`.
pub fn lagrangian_count(d: usize, p: u64) -> u128 {
    (1..=d).fold(1u128, |acc, i| acc.saturating_mul(power(p, i).saturating_add(1)))
}

pub(crate) fn prime_of(field: Field) -> Result<u64> {
    match field.kind() {
        FieldKind::Prime(p) => Ok(p),
        FieldKind::Rationals => Err(Error::usage("exhaustive enumeration needs a prime field")),
    }
}

pub(crate) fn guard(what: &'static str, needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        return Err(Error::Resource { what, needed, budget });
    }
    Ok(())
}

/// Every word in `{0..p-1}^len`, in lexicographic order.
#[derive(Clone, Debug)]
pub(crate) struct Digits {
    p: u64,
    cur: Vec<u64>,
    done: bool,
}

impl Digits {
    pub(crate) fn new(p: u64, len: usize) -> Digits {
        Digits {
            p,
            cur: vec![0; len],
            done: false,
        }
    }
}

impl Iterator for Digits {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        self.done = true;
        for k in (0..self.cur.len()).rev() {
            self.cur[k] += 1;
            if self.cur[k] < self.p {
                self.done = false;
                break;
            }
            self.cur[k] = 0;
        }
        Some(out)
    }
}

/// The elements `0, 1, ..., p-1` of `𝔽_p`.
pub(crate) fn elements(field: Field, p: u64) -> Vec<Scalar> {
    (0..p).map(|k| field.from_i64(k as i64)).collect()
}

/// Pivot columns, free `(row, column)` slots, and the counter over their values.
type Pattern = (Vec<usize>, Vec<(usize, usize)>, Digits);

/// The `d`-dimensional subspaces of `𝔽_p^n`, one per reduced row echelon
/// form: pivot columns in lexicographic order, then the free entries.
pub struct SubspaceIter {
    field: Field,
    n: usize,
    elems: Vec<Scalar>,
    pivot_sets: std::vec::IntoIter<Vec<usize>>,
    current: Option<Pattern>,
}

impl SubspaceIter {
    fn new(field: Field, n: usize, d: usize) -> Result<SubspaceIter> {
        let p = prime_of(field)?;
        Ok(SubspaceIter {
            field,
            n,
            elems: elements(field, p),
            pivot_sets: crate::weyl::d_subsets(n, d).into_iter(),
            current: None,
        })
    }

    fn advance_pattern(&mut self) -> bool {
        let Some(one_based) = self.pivot_sets.next() else {
            return false;
        };
        let pivots: Vec<usize> = one_based.iter().map(|c| c - 1).collect();
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                let piv = &pivots;
                (pc + 1..self.n).filter(move |c| !piv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let digits = Digits::new(self.elems.len() as u64, free.len());
        self.current = Some((pivots, free, digits));
        true
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            if self.current.is_none() && !self.advance_pattern() {
                return None;
            }
            let (pivots, free, digits) = self.current.as_mut().expect("pattern set above");
            let Some(word) = digits.next() else {
                self.current = None;
                continue;
            };
            let mut basis = Matrix::zeros(self.field, pivots.len(), self.n);
            for (r, &c) in pivots.iter().enumerate() {
                basis.set(r, c, &self.elems[1]);
            }
            for (&(r, c), &k) in free.iter().zip(&word) {
                basis.set(r, c, &self.elems[k as usize]);
            }
            return Some(Subspace::from_canonical(basis));
        }
    }
}

/// Every `d`-dimensional subspace of `𝔽_p^n` exactly once. The count is
/// checked against the budget before anything is built.
pub fn enumerate_subspaces(n: usize, d: usize, field: Field, budget: &Budget) -> Result<SubspaceIter> {
    let p = prime_of(field)?;
    if d > n {
        return Err(Error::usage(format!("no {d}-dimensional subspaces of a {n}-dimensional space")));
    }
    guard("subspace enumeration", gaussian_binomial(n, d, p), budget.subspaces)?;
    SubspaceIter::new(field, n, d)
}

/// The Lagrangian subspaces of `𝔽_p^{2d}`.
pub fn enumerate_lagrangians(d: usize, field: Field, budget: &Budget) -> Result<impl Iterator<Item = Subspace>> {
    let form = SymplecticForm::new(field, d)?;
    Ok(enumerate_subspaces(2 * d, d, field, budget)?.filter(move |v| form.is_lagrangian(v).expect("ambient 2d")))
}

/// `X(𝔽_p)`: all `d`-subspaces in type A, the Lagrangians in type C.
pub fn enumerate_base(ctx: &GrassContext, field: Field, budget: &Budget) -> Result<Vec<Subspace>> {
    Ok(if ctx.is_type_c() {
        enumerate_lagrangians(ctx.d(), field, budget)?.collect()
    } else {
        enumerate_subspaces(ctx.n(), ctx.d(), field, budget)?.collect()
    })
}

/// `|X(𝔽_p)|`.
pub fn base_count(ctx: &GrassContext, p: u64) -> u128 {
    if ctx.is_type_c() {
        lagrangian_count(ctx.d(), p)
    } else {
        gaussian_binomial(ctx.n(), ctx.d(), p)
    }
}

/// `|T*_V X(𝔽_p)|`: `p^{d(n-d)}`, or `p^{d(d+1)/2}` in type C.
pub fn fibre_count(ctx: &GrassContext, p: u64) -> u128 {
    let d = ctx.d();
    if ctx.is_type_c() {
        power(p, d * (d + 1) / 2)
    } else {
        power(p, d * (ctx.n() - d))
    }
}

/// The linear forms vanishing on `V`, as rows.
fn annihilator(v: &Subspace) -> Matrix {
    v.basis().null_space_rows()
}

/// All `x = Σ c_ab v_a φ_b^T` with `v_a` a basis of `V` and `φ_b` one of its
/// annihilator: exactly the maps with `im x ⊆ V ⊆ ker x`. In type C those
/// outside `𝔰𝔭` are dropped. The number of candidates is guarded.
pub fn enumerate_cotangent_fibre(
    v: &Subspace,
    ctx: &GrassContext,
    budget: &Budget,
) -> Result<impl Iterator<Item = Matrix>> {
    let field = v.field();
    let p = prime_of(field)?;
    let (n, d) = (ctx.n(), ctx.d());
    if v.ambient_dim() != n || v.dim() != d {
        return Err(Error::usage("V does not belong to the context"));
    }
    let form = if ctx.is_type_c() {
        if !SymplecticForm::new(field, d)?.is_lagrangian(v)? {
            return Err(Error::usage("V is not Lagrangian"));
        }
        Some(SymplecticForm::new(field, d)?)
    } else {
        None
    };
    guard("cotangent fibre", power(p, d * (n - d)), budget.fibre)?;
    let elems = elements(field, p);
    let left = v.basis().transpose();
    let right = annihilator(v);
    Ok(Digits::new(p, d * (n - d)).filter_map(move |word| {
        let mut c = Matrix::zeros(field, d, n - d);
        for (k, &e) in word.iter().enumerate() {
            c.set(k / (n - d), k % (n - d), &elems[e as usize]);
        }
        let x = &(&left * &c) * &right;
        match &form {
            Some(f) if !f.in_lie_algebra(&x) => None,
            _ => Some(x),
        }
    }))
}

/// The type C fibre built a second way: `x = Ω^{-1} Φ^T S Φ` with `S`
/// symmetric and `Φ` the annihilator of `V`.
pub fn symplectic_fibre_from_forms(v: &Subspace, budget: &Budget) -> Result<Vec<Matrix>> {
    let field = v.field();
    let p = prime_of(field)?;
    let d = v.dim();
    let form = SymplecticForm::for_ambient(field, v.ambient_dim())?;
    if form.d() != d || !form.is_lagrangian(v)? {
        return Err(Error::usage("V is not Lagrangian"));
    }
    let m = d * (d + 1) / 2;
    guard("cotangent fibre", power(p, m), budget.fibre)?;
    let elems = elements(field, p);
    let phi = annihilator(v);
    let ginv = form.gram().inverse()?;
    let left = &ginv * &phi.transpose();
    Ok(Digits::new(p, m)
        .map(|word| {
            let mut s = Matrix::zeros(field, d, d);
            let mut k = 0;
            for a in 0..d {
                for b in a..d {
                    s.set(a, b, &elems[word[k] as usize]);
                    s.set(b, a, &elems[word[k] as usize]);
                    k += 1;
                }
            }
            &(&left * &s) * &phi
        })
        .collect())
}

/// Strictly upper-triangular matrices; in type C those in `𝔰𝔭`, as
/// combinations of the positive root generators.
pub fn enumerate_upper_nilpotents(
    ctx: &GrassContext,
    field: Field,
    budget: &Budget,
) -> Result<impl Iterator<Item = Matrix>> {
    let p = prime_of(field)?;
    let n = ctx.n();
    let gens: Vec<Matrix> = if ctx.is_type_c() {
        crate::conormal::symplectic_positive_roots(field, ctx.d())
    } else {
        (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .map(|(i, j)| Matrix::elementary(field, n, i, j))
            .collect()
    };
    guard("nilradical enumeration", power(p, gens.len()), budget.points)?;
    let elems = elements(field, p);
    Ok(Digits::new(p, gens.len()).map(move |word| {
        let mut x = Matrix::zeros(field, n, n);
        for (g, &e) in gens.iter().zip(&word) {
            if e != 0 {
                x = &x + &g.scale(&elems[e as usize]);
            }
        }
        x
    }))
}

/// The `k`-dimensional subspaces of `S`.
pub(crate) fn subspaces_of(s: &Subspace, k: usize) -> Result<Vec<Subspace>> {
    let iter = SubspaceIter::new(s.field(), s.dim(), k)?;
    Ok(iter.map(|u| Subspace::canonicalize(&(u.basis() * s.basis()))).collect())
}

/// The `k`-dimensional subspaces containing `S`, as `S ⊕ U` with `U` running
/// over subspaces of the coordinate complement of the pivots of `S`.
pub(crate) fn superspaces_of(s: &Subspace, k: usize) -> Result<Vec<Subspace>> {
    let n = s.ambient_dim();
    let rest: Vec<usize> = (1..=n).filter(|c| !s.pivots().contains(&(c - 1))).collect();
    let comp = Subspace::coordinate(s.field(), n, &rest)?;
    subspaces_of(&comp, k - s.dim())?
        .into_iter()
        .map(|u| s.sum(&u))
        .collect()
}

/// Every flag `F` of shape `q` in `X^Q_w` with `F(q_l) = V`, found by
/// exhaustive search. Type A prunes level by level; in type C the levels
/// below `V` are searched and the rest are their perps.
pub fn schubert_flags_through(v: &Subspace, w: &Permutation, shape: &FlagShape) -> Result<Vec<crate::PartialFlag>> {
    let l = shape.l;
    let ok = |s: &Subspace, i: usize| meets_targets(s, &RankTargets::new(w, shape.q[i]));
    if !ok(v, l) {
        return Ok(Vec::new());
    }
    let mut lower: Vec<Vec<Subspace>> = vec![vec![v.clone()]];
    for i in (0..l).rev() {
        let mut next = Vec::new();
        for chain in &lower {
            for s in subspaces_of(chain.last().expect("nonempty chain"), shape.q[i])? {
                if ok(&s, i) {
                    let mut c = chain.clone();
                    c.push(s);
                    next.push(c);
                }
            }
        }
        lower = next;
    }
    let mut out = Vec::new();
    if shape.ctx.is_type_c() {
        let form = SymplecticForm::new(v.field(), shape.ctx.d())?;
        for mut chain in lower {
            chain.reverse();
            for k in l + 1..shape.len() {
                let mirrored = form.perp(&chain[shape.mirror(k)])?;
                chain.push(mirrored);
            }
            let f = crate::PartialFlag::new(shape.q.clone(), chain)?;
            if in_flag_schubert(&f, w, shape)? {
                out.push(f);
            }
        }
        return Ok(out);
    }
    let mut chains: Vec<Vec<Subspace>> = lower
        .into_iter()
        .map(|mut c| {
            c.reverse();
            c
        })
        .collect();
    for k in l + 1..shape.len() {
        let mut next = Vec::new();
        for chain in &chains {
            for s in superspaces_of(chain.last().expect("nonempty chain"), shape.q[k])? {
                if ok(&s, k) {
                    let mut c = chain.clone();
                    c.push(s);
                    next.push(c);
                }
            }
        }
        chains = next;
    }
    for chain in chains {
        out.push(crate::PartialFlag::new(shape.q.clone(), chain)?);
    }
    Ok(out)
}

/// A flag from `flags` satisfying the containments `x F(q_{l+i}) ⊆ F(q_{i-1})`.
pub fn find_quiver_flag<'a>(
    flags: &'a [crate::PartialFlag],
    x: &Matrix,
    shape: &FlagShape,
) -> Option<&'a crate::PartialFlag> {
    flags.iter().find(|f| quiver_holds(f, x, shape))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(2, 1, 2), 3);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(5, 2, 2), 155);
        assert_eq!(gaussian_binomial(4, 2, 3), 130);
        assert_eq!(gaussian_binomial(3, 0, 7), 1);
        assert_eq!(lagrangian_count(2, 3), 40);
        assert_eq!(lagrangian_count(2, 2), 15);
    }

    #[test]
    fn subspace_counts_and_uniqueness() {
        let f2 = Field::prime(2).unwrap();
        let b = Budget::default();
        for (n, d) in [(2, 1), (4, 2), (5, 2), (5, 3), (3, 0), (3, 3)] {
            let all: Vec<Subspace> = enumerate_subspaces(n, d, f2, &b).unwrap().collect();
            let set: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(all.len() as u128, gaussian_binomial(n, d, 2));
            assert_eq!(set.len(), all.len());
            for v in &all {
                assert_eq!(&Subspace::canonicalize(v.basis()), v);
                assert_eq!(v.dim(), d);
            }
        }
        assert_eq!(enumerate_lagrangians(2, f2, &b).unwrap().count(), 15);
        let f3 = Field::prime(3).unwrap();
        assert_eq!(enumerate_lagrangians(2, f3, &b).unwrap().count(), 40);
    }

    #[test]
    fn guards_fire_first() {
        let f2 = Field::prime(2).unwrap();
        let tiny = Budget::uniform(10);
        assert!(matches!(enumerate_subspaces(4, 2, f2, &tiny), Err(Error::Resource { needed: 35, .. })));
        assert!(matches!(
            enumerate_subspaces(60, 30, f2, &Budget::default()),
            Err(Error::Resource { .. })
        ));
        assert!(enumerate_subspaces(4, 2, Field::rationals(), &Budget::default()).is_err());
    }

    #[test]
    fn fibres() {
        let f2 = Field::prime(2).unwrap();
        let ctx = GrassContext::type_a(4, 2).unwrap();
        let b = Budget::default();
        for v in enumerate_subspaces(4, 2, f2, &b).unwrap() {
            let fib: Vec<Matrix> = enumerate_cotangent_fibre(&v, &ctx, &b).unwrap().collect();
            let set: HashSet<_> = fib.iter().cloned().collect();
            assert_eq!(set.len(), 16);
            assert!(set.contains(&Matrix::zeros(f2, 4, 4)));
            assert!(fib.iter().all(|x| crate::conormal::is_cotangent_point(&v, x, &ctx)));
        }
        let f3 = Field::prime(3).unwrap();
        let c = GrassContext::type_c(2).unwrap();
        for v in enumerate_lagrangians(2, f3, &b).unwrap() {
            let direct: HashSet<Matrix> = enumerate_cotangent_fibre(&v, &c, &b).unwrap().collect();
            let forms: HashSet<Matrix> = symplectic_fibre_from_forms(&v, &b).unwrap().into_iter().collect();
            assert_eq!(direct.len(), 27);
            assert_eq!(direct, forms);
        }
    }

    #[test]
    fn sub_and_super_spaces() {
        let f2 = Field::prime(2).unwrap();
        let v = Subspace::standard(f2, 5, 2);
        assert_eq!(subspaces_of(&v, 1).unwrap().len(), 3);
        let sup = superspaces_of(&v, 3).unwrap();
        assert_eq!(sup.len(), 7);
        assert!(sup.iter().all(|s| s.contains(&v).unwrap() && s.dim() == 3));
        assert_eq!(sup.iter().collect::<HashSet<_>>().len(), 7);
    }

    #[test]
    fn upper_nilpotent_counts() {
        let f2 = Field::prime(2).unwrap();
        let b = Budget::default();
        assert_eq!(enumerate_upper_nilpotents(&GrassContext::type_a(4, 2).unwrap(), f2, &b).unwrap().count(), 64);
        let f3 = Field::prime(3).unwrap();
        let c = GrassContext::type_c(2).unwrap();
        let form = SymplecticForm::new(f3, 2).unwrap();
        let all: Vec<Matrix> = enumerate_upper_nilpotents(&c, f3, &b).unwrap().collect();
        assert_eq!(all.len(), 81);
        assert!(all.iter().all(|x| x.is_strictly_upper() && form.in_lie_algebra(x)));
    }
}
