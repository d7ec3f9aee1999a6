//! Permutations in one-line notation, Grassmannian coset representatives,
//! and the rank function `m_w`.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};

/// A permutation of `{1, ..., n}` in one-line notation `(w(1), ..., w(n))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Permutation> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n || seen[v] {
                return Err(Error::usage(format!("{word:?} is not a permutation of 1..{n}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            word: (1..=n).collect(),
        }
    }

    /// Parse comma-separated one-line notation such as `2,4,1,3`.
    pub fn parse(s: &str) -> Result<Permutation> {
        let word = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::usage(format!("cannot parse permutation {s:?}")))?;
        Permutation::new(word)
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `w(i)` for `1 ≤ i ≤ n`.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::usage("composing permutations of different sizes"));
        }
        Ok(Permutation {
            word: other.word.iter().map(|&i| self.at(i)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut word = vec![0; self.n()];
        for (i, &v) in self.word.iter().enumerate() {
            word[v - 1] = i + 1;
        }
        Permutation { word }
    }

    pub fn inversions(&self) -> usize {
        let w = &self.word;
        (0..w.len())
            .map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count())
            .sum()
    }

    /// The matrix sending `e_k` to `e_{w(k)}`.
    pub fn matrix(&self, field: Field) -> Matrix {
        let mut m = Matrix::zeros(field, self.n(), self.n());
        for (k, &v) in self.word.iter().enumerate() {
            m.set(v - 1, k, &field.one());
        }
        m
    }

    pub fn to_json(&self) -> Value {
        json!({ "n": self.n(), "word": self.word })
    }

    /// Accepts `{"n":.., "word":[..]}` or a bare array.
    pub fn from_json(v: &Value) -> Result<Permutation> {
        let (word, n) = match v {
            Value::Array(_) => (v, None),
            Value::Object(_) => (
                v.get("word").ok_or_else(|| Error::usage("permutation needs a \"word\""))?,
                v.get("n").map(|n| n.as_u64().ok_or_else(|| Error::usage("\"n\" must be an integer"))),
            ),
            Value::String(s) => return Permutation::parse(s),
            _ => return Err(Error::usage("permutation must be an object, array or string")),
        };
        let word = word
            .as_array()
            .ok_or_else(|| Error::usage("\"word\" must be an array"))?
            .iter()
            .map(|e| e.as_u64().map(|e| e as usize))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::usage("permutation entries must be positive integers"))?;
        if let Some(n) = n {
            if n? as usize != word.len() {
                return Err(Error::usage("\"n\" does not match the word length"));
            }
        }
        Permutation::new(word)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Which Grassmannian: `Gr(d, n)` in type A, or the Lagrangian Grassmannian
/// of `F^{2d}` in type C.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GrassContext {
    A { n: usize, d: usize },
    C { d: usize },
}

impl GrassContext {
    pub fn type_a(n: usize, d: usize) -> Result<GrassContext> {
        if d == 0 || d >= n {
            return Err(Error::usage(format!("type A needs 0 < d < n, got n={n}, d={d}")));
        }
        Ok(GrassContext::A { n, d })
    }

    pub fn type_c(d: usize) -> Result<GrassContext> {
        if d == 0 {
            return Err(Error::usage("type C needs d >= 1"));
        }
        Ok(GrassContext::C { d })
    }

    /// Ambient dimension: `n`, or `2d` in type C.
    pub fn n(&self) -> usize {
        match *self {
            GrassContext::A { n, .. } => n,
            GrassContext::C { d } => 2 * d,
        }
    }

    pub fn d(&self) -> usize {
        match *self {
            GrassContext::A { d, .. } | GrassContext::C { d } => d,
        }
    }

    pub fn is_type_c(&self) -> bool {
        matches!(self, GrassContext::C { .. })
    }

    pub fn label(&self) -> &'static str {
        if self.is_type_c() {
            "C"
        } else {
            "A"
        }
    }

    pub fn to_json(&self) -> Value {
        match *self {
            GrassContext::A { n, d } => json!({ "type": "A", "n": n, "d": d }),
            GrassContext::C { d } => json!({ "type": "C", "d": d }),
        }
    }

    pub fn from_json(v: &Value) -> Result<GrassContext> {
        let get = |k: &str| {
            v.get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::usage(format!("context needs an integer {k:?}")))
        };
        match v.get("type").and_then(Value::as_str) {
            Some("A") => GrassContext::type_a(get("n")?, get("d")?),
            Some("C") => {
                if let Some(n) = v.get("n").and_then(Value::as_u64) {
                    if n as usize != 2 * get("d")? {
                        return Err(Error::usage("type C context needs n = 2d"));
                    }
                }
                GrassContext::type_c(get("d")?)
            }
            _ => Err(Error::usage("context \"type\" must be \"A\" or \"C\"")),
        }
    }

    pub(crate) fn check_perm(&self, w: &Permutation) -> Result<()> {
        if w.n() != self.n() {
            return Err(Error::usage(format!(
                "permutation of size {} in a context of ambient dimension {}",
                w.n(),
                self.n()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for GrassContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GrassContext::A { n, d } => write!(f, "Gr({d},{n})"),
            GrassContext::C { d } => write!(f, "SGr({})", 2 * d),
        }
    }
}

/// `m_w(i, j) = #{k ≤ j : w(k) ≤ i}`, with `0 ≤ i, j ≤ n`.
pub fn mw(w: &Permutation, i: usize, j: usize) -> Result<usize> {
    if i > w.n() || j > w.n() {
        return Err(Error::usage(format!("m_w({i},{j}) outside 0..={}", w.n())));
    }
    Ok(mw_unchecked(w, i, j))
}

pub(crate) fn mw_unchecked(w: &Permutation, i: usize, j: usize) -> usize {
    w.word[..j].iter().filter(|&&v| v <= i).count()
}

/// Increasing on `1..d` and on `d+1..n`; in type C, also a type-C element.
pub fn is_minimal_rep(w: &Permutation, ctx: &GrassContext) -> bool {
    if w.n() != ctx.n() {
        return false;
    }
    let d = ctx.d();
    let inc = |s: &[usize]| s.windows(2).all(|p| p[0] < p[1]);
    inc(&w.word[..d]) && inc(&w.word[d..]) && (!ctx.is_type_c() || type_c_unchecked(w))
}

/// `w(ī) = overline(w(i))` with `ī = n + 1 - i`.
pub fn is_type_c_element(w: &Permutation) -> Result<bool> {
    if !w.n().is_multiple_of(2) {
        return Err(Error::usage(format!("type C elements live in S_2d, got n = {}", w.n())));
    }
    Ok(type_c_unchecked(w))
}

fn type_c_unchecked(w: &Permutation) -> bool {
    let n = w.n();
    (1..=n).all(|i| w.at(n + 1 - i) == n + 1 - w.at(i))
}

/// Longest element of the block subgroup: reverses `1..d` and `d+1..n`.
pub fn block_reversal(n: usize, d: usize) -> Permutation {
    Permutation {
        word: (1..=n).map(|i| if i <= d { d + 1 - i } else { n + d + 1 - i }).collect(),
    }
}

/// `(w_P, v = w ∘ w_P)`; `v` is decreasing on both blocks.
pub fn maximal_rep_pair(w: &Permutation, ctx: &GrassContext) -> Result<(Permutation, Permutation)> {
    if !is_minimal_rep(w, ctx) {
        return Err(Error::usage(format!("{w} is not a minimal representative for {ctx}")));
    }
    let wp = block_reversal(ctx.n(), ctx.d());
    let v = w.compose(&wp)?;
    Ok((wp, v))
}

/// All minimal representatives, ordered lexicographically by `w(1..d)`.
pub fn enumerate_minimal_reps(ctx: &GrassContext) -> Result<Vec<Permutation>> {
    match *ctx {
        GrassContext::A { n, .. } if n > 12 => Err(Error::Resource {
            what: "minimal representatives (n)",
            needed: n as u128,
            budget: 12,
        }),
        GrassContext::C { d } if d > 6 => Err(Error::Resource {
            what: "minimal representatives (d)",
            needed: d as u128,
            budget: 6,
        }),
        _ => {
            let (n, d) = (ctx.n(), ctx.d());
            let mut out = Vec::new();
            for top in d_subsets(n, d) {
                let mut word = top.clone();
                word.extend((1..=n).filter(|v| !top.contains(v)));
                let w = Permutation { word };
                if !ctx.is_type_c() || type_c_unchecked(&w) {
                    out.push(w);
                }
            }
            Ok(out)
        }
    }
}

/// Increasing `d`-subsets of `1..=n` in lexicographic order.
pub(crate) fn d_subsets(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..=n + 1 - left {
            cur.push(v);
            rec(v + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d <= n {
        rec(1, n, d, &mut Vec::new(), &mut out);
    }
    out
}
