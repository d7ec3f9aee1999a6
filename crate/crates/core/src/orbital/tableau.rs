use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::profile::BlockProfile;
use crate::weyl::{block_reversal, Permutation};

/// A partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Column lengths.
    pub fn conjugate(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((0..cols).map(|c| self.0.iter().filter(|&&p| p > c).count()).collect())
    }

    /// Dominance order on partitions of the same size.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        let (mut a, mut b) = (0, 0);
        for k in 0..self.0.len().max(other.0.len()) {
            a += self.0.get(k).copied().unwrap_or(0);
            b += other.0.get(k).copied().unwrap_or(0);
            if a > b {
                return false;
            }
        }
        self.size() == other.size()
    }
}

/// A standard Young tableau stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<StandardTableau> {
        let rows: Vec<Vec<usize>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        let n: usize = rows.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for (k, row) in rows.iter().enumerate() {
            if k > 0 && row.len() > rows[k - 1].len() {
                return Err(Error::usage("tableau row lengths must weakly decrease"));
            }
            for (c, &v) in row.iter().enumerate() {
                if v == 0 || v > n || seen[v] {
                    return Err(Error::usage(format!("tableau entries must be exactly 1..{n}")));
                }
                seen[v] = true;
                if c > 0 && row[c - 1] >= v {
                    return Err(Error::usage("tableau rows must increase"));
                }
                if k > 0 && rows[k - 1][c] >= v {
                    return Err(Error::usage("tableau columns must increase"));
                }
            }
        }
        Ok(StandardTableau { rows })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(Vec::len).collect())
    }

    pub fn column(&self, c: usize) -> Vec<usize> {
        self.rows.iter().filter_map(|r| r.get(c).copied()).collect()
    }

    pub fn num_columns(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn to_json(&self) -> Value {
        json!({ "rows": self.rows })
    }

    pub fn from_json(v: &Value) -> Result<StandardTableau> {
        let rows = v
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::usage("tableau needs a \"rows\" array"))?
            .iter()
            .map(|r| {
                r.as_array()
                    .and_then(|r| r.iter().map(|e| e.as_u64().map(|e| e as usize)).collect::<Option<Vec<_>>>())
                    .ok_or_else(|| Error::usage("tableau rows must be arrays of positive integers"))
            })
            .collect::<Result<Vec<_>>>()?;
        StandardTableau::new(rows)
    }
}

/// Row insertion tableau of `w(1), ..., w(n)`.
pub fn rsk_left(w: &Permutation) -> StandardTableau {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for &v in w.word() {
        let mut bump = v;
        let mut r = 0;
        loop {
            if r == rows.len() {
                rows.push(vec![bump]);
                break;
            }
            match rows[r].iter().position(|&e| e > bump) {
                Some(c) => {
                    std::mem::swap(&mut rows[r][c], &mut bump);
                    r += 1;
                }
                None => {
                    rows[r].push(bump);
                    break;
                }
            }
        }
    }
    StandardTableau { rows }
}

/// A skew tableau: row `r` starts after `inner[r]` empty cells. Entries
/// increase along rows and down columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewTableau {
    inner: Vec<usize>,
    rows: Vec<Vec<usize>>,
}

impl SkewTableau {
    pub fn new(inner: Vec<usize>, rows: Vec<Vec<usize>>) -> Result<SkewTableau> {
        if inner.len() != rows.len() {
            return Err(Error::usage("one inner length per row"));
        }
        let outer: Vec<usize> = inner.iter().zip(&rows).map(|(i, r)| i + r.len()).collect();
        let decreasing = |v: &[usize]| v.windows(2).all(|p| p[0] >= p[1]);
        if !decreasing(&inner) || !decreasing(&outer) {
            return Err(Error::usage("inner and outer shapes must be partitions"));
        }
        let t = SkewTableau { inner, rows };
        for r in 0..t.rows.len() {
            for (k, &v) in t.rows[r].iter().enumerate() {
                let c = t.inner[r] + k;
                if k > 0 && t.rows[r][k - 1] >= v {
                    return Err(Error::usage("skew tableau rows must increase"));
                }
                if r > 0 && t.get(r - 1, c).is_some_and(|above| above >= v) {
                    return Err(Error::usage("skew tableau columns must increase"));
                }
            }
        }
        Ok(t)
    }

    fn get(&self, r: usize, c: usize) -> Option<usize> {
        let k = c.checked_sub(self.inner[r])?;
        self.rows[r].get(k).copied()
    }

    /// Entries of `t` lying in `lo < e ≤ hi`, keeping their cells. Cells at most
    /// `lo` become the inner shape.
    pub fn restrict(t: &StandardTableau, lo: usize, hi: usize) -> SkewTableau {
        let mut inner = Vec::new();
        let mut rows = Vec::new();
        for row in t.rows() {
            let below = row.iter().take_while(|&&e| e <= lo).count();
            let upto = row.iter().take_while(|&&e| e <= hi).count();
            if upto == 0 {
                break;
            }
            inner.push(below);
            rows.push(row[below..upto].to_vec());
        }
        SkewTableau { inner, rows }
    }

    /// Rectify by forward slides into inner corners, then relabel entries to `1..m`.
    pub fn rectify(&self) -> StandardTableau {
        let mut grid: Vec<Vec<Option<usize>>> = self
            .inner
            .iter()
            .zip(&self.rows)
            .map(|(&i, r)| std::iter::repeat_n(None, i).chain(r.iter().map(|&e| Some(e))).collect())
            .collect();
        loop {
            let corner = (0..grid.len()).rev().find_map(|r| {
                let c = grid[r].iter().rposition(Option::is_none)?;
                let below_free = grid.get(r + 1).is_none_or(|b| b.get(c).is_none_or(Option::is_some));
                below_free.then_some((r, c))
            });
            let Some((mut r, mut c)) = corner else { break };
            loop {
                let right = grid[r].get(c + 1).copied().flatten();
                let down = grid.get(r + 1).and_then(|b| b.get(c).copied().flatten());
                match (right, down) {
                    (None, None) => {
                        grid[r].truncate(c);
                        break;
                    }
                    (Some(a), Some(b)) if b < a => {
                        grid[r][c] = Some(b);
                        r += 1;
                    }
                    (Some(a), _) => {
                        grid[r][c] = Some(a);
                        c += 1;
                    }
                    (None, Some(b)) => {
                        grid[r][c] = Some(b);
                        r += 1;
                    }
                }
                grid[r][c] = None;
            }
        }
        let rows: Vec<Vec<usize>> = grid
            .into_iter()
            .map(|r| r.into_iter().map(|e| e.expect("rectified shape has no holes")).collect::<Vec<_>>())
            .filter(|r| !r.is_empty())
            .collect();
        let mut entries: Vec<usize> = rows.iter().flatten().copied().collect();
        entries.sort_unstable();
        let rank = |e: usize| entries.binary_search(&e).unwrap() + 1;
        StandardTableau {
            rows: rows.into_iter().map(|r| r.into_iter().map(rank).collect()).collect(),
        }
    }
}

/// The Grassmannian permutation read off a tableau with at most two columns:
/// the first column followed by the second, and `v = w ∘ w_P`.
pub fn tableau_to_wv(t: &StandardTableau) -> Result<(Permutation, Permutation)> {
    if t.num_columns() > 2 {
        return Err(Error::usage("tableau has more than two columns"));
    }
    let k = t.column(0).len();
    let mut word = t.column(0);
    word.extend(t.column(1));
    let w = Permutation::new(word)?;
    let v = w.compose(&block_reversal(w.n(), k))?;
    if rsk_left(&v) != *t {
        return Err(Error::contradiction(format!("the insertion tableau of {v} is not the given tableau")));
    }
    Ok((w, v))
}

/// Block profile of the two-column permutation, with `d` the first-column length.
pub fn tableau_profile(t: &StandardTableau) -> Result<BlockProfile> {
    let (w, _) = tableau_to_wv(t)?;
    let k = t.column(0).len();
    Ok(BlockProfile::from_top(w.n(), &w.word()[..k]))
}

fn window_of(t: &StandardTableau, profile: &BlockProfile, i: usize, j: usize) -> Result<StandardTableau> {
    if j >= i || i > profile.l + 1 {
        return Err(Error::usage(format!("window ({i},{j}) needs 0 ≤ j < i ≤ {}", profile.l + 1)));
    }
    Ok(SkewTableau::restrict(t, profile.t[j], profile.t[i]).rectify())
}

/// Entries of `T` in `(t_j, t_i]`, rectified.
pub fn jdt_window(t: &StandardTableau, i: usize, j: usize) -> Result<StandardTableau> {
    window_of(t, &tableau_profile(t)?, i, j)
}

/// The bound on the window `(t_j, t_i]`: the least `min(r_{i'-1} - r_{j'},
/// c_{i'} - c_{j'+1})` over index pairs naming the same window. Only
/// `t_l = t_{l+1} = n` repeats a value, and there the `i = l` bound is the
/// smaller one.
pub fn window_bound(profile: &BlockProfile, i: usize, j: usize) -> usize {
    profile
        .index_pairs()
        .filter(|&(a, b)| profile.t[a] == profile.t[i] && profile.t[b] == profile.t[j])
        .map(|(a, b)| profile.bound(a, b))
        .min()
        .expect("(i, j) names its own window")
}

/// Every window `(t_j, t_i]` with `0 ≤ j < i ≤ l + 1` has as many boxes in its
/// rectified second column as its bound.
pub fn recover_bounds_check(t: &StandardTableau) -> Result<bool> {
    Ok(recover_mismatches(t)?.is_empty())
}

/// Windows where the two counts differ, as `(i, j, f, g)`.
pub fn recover_mismatches(t: &StandardTableau) -> Result<Vec<(usize, usize, usize, usize)>> {
    let profile = tableau_profile(t)?;
    let mut out = Vec::new();
    for (i, j) in profile.index_pairs() {
        let f = window_of(t, &profile, i, j)?.column(1).len();
        let g = window_bound(&profile, i, j);
        if f != g {
            out.push((i, j, f, g));
        }
    }
    Ok(out)
}

/// All standard tableaux with exactly `n` boxes and at most two columns,
/// i.e. shapes `(2^a, 1^{n-2a})`.
pub fn two_column_tableaux(n: usize) -> Vec<StandardTableau> {
    // Assign 1..n in order; each entry goes to column 0 or column 1, with
    // column 1 never longer than column 0.
    fn rec(v: usize, n: usize, a: &mut Vec<usize>, b: &mut Vec<usize>, out: &mut Vec<StandardTableau>) {
        if v > n {
            let rows = (0..a.len())
                .map(|r| match b.get(r) {
                    Some(&e) => vec![a[r], e],
                    None => vec![a[r]],
                })
                .collect();
            out.push(StandardTableau { rows });
            return;
        }
        a.push(v);
        rec(v + 1, n, a, b, out);
        a.pop();
        if b.len() < a.len() {
            b.push(v);
            rec(v + 1, n, a, b, out);
            b.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// Standard tableaux of the two-column rectangle `(2^m)`.
pub fn rectangle_tableaux(m: usize) -> Vec<StandardTableau> {
    two_column_tableaux(2 * m)
        .into_iter()
        .filter(|t| t.rows.iter().all(|r| r.len() == 2))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tab(rows: &[&[usize]]) -> StandardTableau {
        StandardTableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn insertion_examples() {
        assert_eq!(rsk_left(&Permutation::identity(4)), tab(&[&[1, 2, 3, 4]]));
        assert_eq!(rsk_left(&Permutation::new(vec![2, 4, 1, 3]).unwrap()), tab(&[&[1, 3], &[2, 4]]));
        assert_eq!(rsk_left(&Permutation::new(vec![3, 1, 4, 2]).unwrap()), tab(&[&[1, 2], &[3, 4]]));
    }

    #[test]
    fn rejects_non_standard() {
        assert!(StandardTableau::new(vec![vec![1, 3], vec![2]]).is_ok());
        assert!(StandardTableau::new(vec![vec![2, 1]]).is_err());
        assert!(StandardTableau::new(vec![vec![1, 2], vec![3, 4, 5]]).is_err());
        assert!(StandardTableau::new(vec![vec![2, 3], vec![1]]).is_err());
        assert!(StandardTableau::new(vec![vec![1, 4]]).is_err());
    }

    #[test]
    fn two_column_construction() {
        let t = tab(&[&[1, 2], &[3, 4]]);
        let (w, v) = tableau_to_wv(&t).unwrap();
        assert_eq!(w.word(), &[1, 3, 2, 4]);
        assert_eq!(v.word(), &[3, 1, 4, 2]);
        let col = tab(&[&[1], &[2], &[3]]);
        let (w, v) = tableau_to_wv(&col).unwrap();
        assert_eq!(w, Permutation::identity(3));
        assert_eq!(v.word(), &[3, 2, 1]);
        assert!(tableau_to_wv(&tab(&[&[1, 2, 3]])).is_err());
    }

    #[test]
    fn windows() {
        let t = tab(&[&[1, 2], &[3, 4]]);
        // t = (0, 1, 3, 4): the window (t_1, t_3] = {2, 3, 4}.
        assert_eq!(jdt_window(&t, 3, 0).unwrap(), t);
        assert_eq!(jdt_window(&t, 3, 1).unwrap(), tab(&[&[1, 3], &[2]]));
        assert_eq!(jdt_window(&t, 2, 1).unwrap(), tab(&[&[1], &[2]]));
        assert_eq!(jdt_window(&t, 1, 0).unwrap(), tab(&[&[1]]));
        assert!(jdt_window(&t, 1, 1).is_err());
        assert!(recover_bounds_check(&t).unwrap());
        assert!(recover_bounds_check(&tab(&[&[1], &[2], &[3], &[4]])).unwrap());
    }

    #[test]
    fn general_skew_rectification() {
        // Inner shape (2,1), entries 1..4.
        let s = SkewTableau::new(vec![2, 1, 0], vec![vec![1], vec![2, 4], vec![3]]).unwrap();
        let r = s.rectify();
        assert_eq!(r.size(), 4);
        assert!(StandardTableau::new(r.rows().to_vec()).is_ok());
        assert_eq!(r, tab(&[&[1, 4], &[2], &[3]]));
    }

    /// Row reading word, bottom row first.
    fn reading_word(s: &SkewTableau) -> Vec<usize> {
        s.rows.iter().rev().flatten().copied().collect()
    }

    #[test]
    fn rectification_matches_insertion_of_reading_word() {
        for n in 1..=7 {
            for t in two_column_tableaux(n) {
                for lo in 0..n {
                    for hi in lo + 1..=n {
                        let s = SkewTableau::restrict(&t, lo, hi);
                        let word: Vec<usize> = reading_word(&s).into_iter().map(|e| e - lo).collect();
                        let expect = rsk_left(&Permutation::new(word).unwrap());
                        assert_eq!(s.rectify(), expect, "{t:?} ({lo},{hi}]");
                    }
                }
            }
        }
    }

    #[test]
    fn tableau_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| two_column_tableaux(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 6, 10, 20, 35, 70]);
        assert_eq!(rectangle_tableaux(4).len(), 14);
    }

    #[test]
    fn dominance() {
        let a = Partition::new(vec![2, 1, 1]);
        let b = Partition::new(vec![2, 2]);
        assert!(a.dominated_by(&b));
        assert!(!b.dominated_by(&a));
        assert_eq!(b.conjugate(), Partition::new(vec![2, 2]));
        assert_eq!(a.conjugate(), Partition::new(vec![3, 1]));
    }
}
