//! Block decomposition of a minimal representative, the flag shape it
//! determines, and the fibre `𝔲_w`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Subspace};
use crate::weyl::{is_minimal_rep, GrassContext, Permutation};

/// `w(1..d)` written as the runs `(t′_1, t_1], ..., (t′_l, t_l]`, with the
/// partial sums `r_i = Σ_{j≤i} (t_j - t′_j)` and `c_i = Σ_{j≤i} (t′_j - t_{j-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockProfile {
    pub n: usize,
    pub d: usize,
    pub l: usize,
    /// `t′_1, ..., t′_l`.
    pub tprime: Vec<usize>,
    /// `t_0 = 0, t_1, ..., t_l, t_{l+1} = n`.
    pub t: Vec<usize>,
    /// `r_0 = 0, ..., r_l`.
    pub r: Vec<usize>,
    /// `c_0 = 0, ..., c_{l+1}`.
    pub c: Vec<usize>,
}

impl BlockProfile {
    /// Profile of `w`, which must be a minimal representative for `ctx`.
    pub fn new(w: &Permutation, ctx: &GrassContext) -> Result<BlockProfile> {
        if !is_minimal_rep(w, ctx) {
            return Err(Error::usage(format!("{w} is not a minimal representative for {ctx}")));
        }
        Ok(BlockProfile::from_top(ctx.n(), &w.word()[..ctx.d()]))
    }

    /// Profile from the increasing values `w(1..d)`; `d = n` is allowed here.
    pub(crate) fn from_top(n: usize, top: &[usize]) -> BlockProfile {
        let d = top.len();
        let mut tprime = Vec::new();
        let mut t = vec![0];
        for (k, &v) in top.iter().enumerate() {
            if k == 0 || top[k - 1] + 1 != v {
                tprime.push(v - 1);
                t.push(v);
            } else {
                *t.last_mut().unwrap() = v;
            }
        }
        let l = tprime.len();
        t.push(n);
        let mut r = vec![0];
        let mut c = vec![0];
        for i in 1..=l + 1 {
            let tp = if i <= l { tprime[i - 1] } else { n };
            c.push(c[i - 1] + tp - t[i - 1]);
            if i <= l {
                r.push(r[i - 1] + t[i] - tp);
            }
        }
        BlockProfile { n, d, l, tprime, t, r, c }
    }

    /// The numbers `min(r_{i-1} - r_j, c_i - c_{j+1})` bounding
    /// `dim(xE(t_i) / E(t_j))`, for `0 ≤ j < i ≤ l + 1`.
    pub fn bound(&self, i: usize, j: usize) -> usize {
        debug_assert!(j < i && i <= self.l + 1);
        (self.r[i - 1] - self.r[j]).min(self.c[i] - self.c[j + 1])
    }

    /// All index pairs `(i, j)` with `0 ≤ j < i ≤ l + 1`.
    pub fn index_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.l + 1).flat_map(|i| (0..i).map(move |j| (i, j)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "l": self.l,
            "tprime": self.tprime,
            "t": self.t,
            "r": self.r,
            "c": self.c,
        })
    }
}

pub fn block_profile(w: &Permutation, ctx: &GrassContext) -> Result<BlockProfile> {
    BlockProfile::new(w, ctx)
}

/// `(m_w(t_i, r_j), m_w(t_i, d + c_j))` read off the profile, for `1 ≤ i, j ≤ l`:
/// `(min(r_i, r_j), r_i + min(c_i, c_j))`.
pub fn mw_at_profile(profile: &BlockProfile, i: usize, j: usize) -> Result<(usize, usize)> {
    let l = profile.l;
    if i == 0 || j == 0 || i > l || j > l {
        return Err(Error::usage(format!("profile indices ({i},{j}) outside 1..={l}")));
    }
    let (r, c) = (&profile.r, &profile.c);
    Ok((r[i].min(r[j]), r[i] + c[i].min(c[j])))
}

/// The flag shape `q` attached to `w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagShape {
    pub q: Vec<usize>,
    pub ctx: GrassContext,
    pub l: usize,
}

impl FlagShape {
    /// `q_i`, reading past the stored shape as `n`.
    pub fn q_ext(&self, i: usize) -> usize {
        if i < self.q.len() {
            self.q[i]
        } else {
            self.ctx.n()
        }
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    /// The level paired with `i` under `F ↦ F^⊥`, for isotropic flags.
    pub fn mirror(&self, i: usize) -> usize {
        self.q.len() - 1 - i
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }
}

/// `q = (r_0, ..., r_l, d + c_1, ..., d + c_{l+1})`. In type C the sequence is
/// cut to be symmetric around `d`: after `q_{2l}` when `t_l = 2d`, and kept
/// whole when `w(1) = 1` (then `q_l = q_{l+1} = d`).
pub fn flag_shape(profile: &BlockProfile, ctx: &GrassContext) -> FlagShape {
    let d = profile.d;
    let mut q: Vec<usize> = profile.r.clone();
    q.extend(profile.c[1..].iter().map(|c| d + c));
    if ctx.is_type_c() && profile.t[profile.l] == 2 * d {
        q.truncate(2 * profile.l + 1);
    }
    FlagShape {
        q,
        ctx: *ctx,
        l: profile.l,
    }
}

/// Root pairs and matrix generators of `𝔲_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UwSpace {
    pub pairs: Vec<(usize, usize)>,
    pub basis: Vec<Matrix>,
}

impl UwSpace {
    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    /// Whether `x` is a linear combination of the generators.
    pub fn contains(&self, x: &Matrix) -> bool {
        let n = x.rows();
        let field = x.field();
        if !x.is_square() || self.basis.first().is_some_and(|b| b.rows() != n || b.field() != field) {
            return false;
        }
        let flat = |m: &Matrix| {
            let mut row = Matrix::zeros(field, 1, n * n);
            for r in 0..n {
                for c in 0..n {
                    row.set(0, r * n + c, &m.get(r, c));
                }
            }
            row
        };
        let mut span = Matrix::zeros(field, 0, n * n);
        for b in &self.basis {
            span = span.vstack(&flat(b)).expect("same width");
        }
        let s = Subspace::canonicalize(&span);
        s.contains(&Subspace::canonicalize(&flat(x))).expect("same ambient")
    }
}

/// The generator attached to a root pair, over `field`.
pub(crate) fn root_generator(field: Field, n: usize, (i, j): (usize, usize), type_c: bool) -> Matrix {
    let mut x = Matrix::elementary(field, n, i, j);
    if type_c {
        // (i, j̄) with i < j: the matching entry sits at (j, ī).
        let ib = n + 1 - i;
        let jb = n + 1 - j;
        if jb != i {
            x = &x + &Matrix::elementary(field, n, jb, ib);
        }
    }
    x
}

/// `𝔲_w`: pairs `(i, j)` with `i ≤ d < j` and `w(i) < w(j)`; in type C
/// only `j = k̄` with `i ≤ k ≤ d`, i.e. `w(i) + w(k) ≤ 2d`.
pub fn uw_space(w: &Permutation, ctx: &GrassContext, field: Field) -> Result<UwSpace> {
    if !is_minimal_rep(w, ctx) {
        return Err(Error::usage(format!("{w} is not a minimal representative for {ctx}")));
    }
    let (n, d) = (ctx.n(), ctx.d());
    let mut pairs = Vec::new();
    for i in 1..=d {
        if ctx.is_type_c() {
            for k in (i..=d).rev() {
                if w.at(i) + w.at(k) <= 2 * d {
                    pairs.push((i, n + 1 - k));
                }
            }
        } else {
            for j in d + 1..=n {
                if w.at(i) < w.at(j) {
                    pairs.push((i, j));
                }
            }
        }
    }
    let basis = pairs
        .iter()
        .map(|&p| root_generator(field, n, p, ctx.is_type_c()))
        .collect();
    Ok(UwSpace { pairs, basis })
}

/// `x E(q_{l+i}) ⊆ E(q_{i-1})` for `1 ≤ i ≤ l + 1`.
pub fn satisfies_shape_quiver(x: &Matrix, shape: &FlagShape) -> bool {
    let n = shape.ctx.n();
    let field = x.field();
    (1..=shape.l + 1).all(|i| {
        let src = Subspace::standard(field, n, shape.q_ext(shape.l + i));
        let img = src.apply(x).expect("square matrix of ambient size");
        img.dim_meet_standard(shape.q_ext(i - 1)) == img.dim()
    })
}
