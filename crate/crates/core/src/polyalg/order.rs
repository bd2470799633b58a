//! Monomial orders on exponent vectors.
//!
//! Every order is described as a sequence of integer weight vectors compared
//! lexicographically, followed by a reverse-lexicographic tie-break. This
//! covers lex, grevlex, weight orders and block elimination orders with one
//! comparison routine, and it is shared by the commutative and the Weyl
//! Gröbner engines.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// A named order kind, resolved against a variable count by [`TermOrder::matrix`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TermOrder {
    Lex,
    Grevlex,
    /// Compare the weight first, then fall back to grevlex.
    Weighted(Vec<i64>),
    /// Variables `0..split` are eliminated: compare their total degree first,
    /// then grevlex on everything.
    Elimination(usize),
    /// Fully explicit order: weight rows followed by the revlex tie-break.
    Matrix(Vec<Vec<i64>>),
}

impl Default for TermOrder {
    fn default() -> Self {
        TermOrder::Grevlex
    }
}

impl TermOrder {
    /// Resolve to a [`MonomialOrder`] on `nvars` variables.
    pub fn matrix(&self, nvars: usize) -> MonomialOrder {
        let ones = vec![1i64; nvars];
        let rows = match self {
            TermOrder::Lex => (0..nvars)
                .map(|i| {
                    let mut r = vec![0; nvars];
                    r[i] = 1;
                    r
                })
                .collect(),
            TermOrder::Grevlex => vec![ones],
            TermOrder::Weighted(w) => {
                assert_eq!(w.len(), nvars, "weight length mismatch");
                vec![w.clone(), ones]
            }
            TermOrder::Elimination(split) => {
                let mut block = vec![0; nvars];
                for b in block.iter_mut().take(*split) {
                    *b = 1;
                }
                vec![block, ones]
            }
            TermOrder::Matrix(rows) => rows.clone(),
        };
        MonomialOrder { rows }
    }
}

/// A resolved monomial order: weight rows, then reverse lex on the last variable first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    rows: Vec<Vec<i64>>,
}

impl MonomialOrder {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        MonomialOrder { rows }
    }

    pub fn grevlex(nvars: usize) -> Self {
        TermOrder::Grevlex.matrix(nvars)
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Compare two exponent vectors of equal length.
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        for row in &self.rows {
            let mut wa = 0i64;
            let mut wb = 0i64;
            for ((w, &x), &y) in row.iter().zip(a).zip(b) {
                wa += w * x as i64;
                wb += w * y as i64;
            }
            match wa.cmp(&wb) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        // Reverse lex: the monomial with the smaller exponent in the last
        // differing variable is larger.
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            match x.cmp(y) {
                Ordering::Equal => {}
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    /// Weight of `a` under the first row (used for sugar-like pair selection).
    pub fn first_weight(&self, a: &[u32]) -> i64 {
        self.rows
            .first()
            .map(|r| r.iter().zip(a).map(|(w, &x)| w * x as i64).sum())
            .unwrap_or(0)
    }
}
