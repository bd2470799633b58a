//! Dense univariate polynomials over ℚ, used for b-functions in `s`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{fmt_rational, Q};

/// Coefficients by ascending degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnivariatePoly {
    coeffs: Vec<Q>,
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn zero() -> Self {
        UnivariatePoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UnivariatePoly::new(vec![Q::one()])
    }

    pub fn constant(c: Q) -> Self {
        UnivariatePoly::new(vec![c])
    }

    /// `s + a`.
    pub fn linear(a: Q) -> Self {
        UnivariatePoly::new(vec![a, Q::one()])
    }

    /// `∏ (s - r)` over the given roots.
    pub fn from_roots(roots: &[Q]) -> Self {
        roots
            .iter()
            .fold(UnivariatePoly::one(), |acc, r| &acc * &UnivariatePoly::linear(-r))
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading();
        UnivariatePoly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `p(s + a)`.
    pub fn shift(&self, a: &Q) -> Self {
        let lin = UnivariatePoly::linear(a.clone());
        let mut acc = UnivariatePoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &UnivariatePoly::constant(c.clone());
        }
        acc
    }

    pub fn scale(&self, c: &Q) -> Self {
        UnivariatePoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        UnivariatePoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &UnivariatePoly) -> (UnivariatePoly, UnivariatePoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        let lc = d.leading();
        if rem.len() <= dd {
            return (UnivariatePoly::zero(), self.clone());
        }
        let mut quo = vec![Q::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = &rem[i] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let v = &rem[i - dd + j] - &c * dc;
                rem[i - dd + j] = v;
            }
            quo[i - dd] = c;
        }
        (UnivariatePoly::new(quo), UnivariatePoly::new(rem))
    }

    pub fn gcd(&self, other: &UnivariatePoly) -> UnivariatePoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Rational roots with multiplicity, and the cofactor without rational roots.
    pub fn rational_roots(&self) -> (Vec<(Q, u32)>, UnivariatePoly) {
        let mut roots = Vec::new();
        if self.is_zero() {
            return (roots, self.clone());
        }
        let mut rest = self.clone();
        // Strip s^k first so the constant term is nonzero.
        let z = rest.coeffs.iter().take_while(|c| c.is_zero()).count();
        if z > 0 {
            roots.push((Q::zero(), z as u32));
            rest = UnivariatePoly::new(rest.coeffs[z..].to_vec());
        }
        for cand in candidate_roots(&rest) {
            let mut mult = 0;
            loop {
                if rest.degree() < 1 || !rest.eval(&cand).is_zero() {
                    break;
                }
                rest = rest.div_rem(&UnivariatePoly::linear(-&cand)).0;
                mult += 1;
            }
            if mult > 0 {
                roots.push((cand, mult));
            }
        }
        roots.sort_by(|a, b| b.0.cmp(&a.0));
        (roots, rest)
    }

    /// Render as `(s+1)(s+5/6)(s+7/6)`: the factor for root `-1` first, the
    /// remaining roots in decreasing order. Returns `None` if a non-linear
    /// rational cofactor remains.
    pub fn factored(&self) -> Option<String> {
        let (roots, rest) = self.monic().rational_roots();
        if rest.degree() > 0 {
            return None;
        }
        if roots.is_empty() {
            return Some("1".into());
        }
        let minus_one = -Q::one();
        let mut ordered: Vec<&(Q, u32)> = roots.iter().filter(|r| r.0 == minus_one).collect();
        ordered.extend(roots.iter().filter(|r| r.0 != minus_one));
        let mut out = String::new();
        for (r, m) in ordered {
            let a = -r;
            let body = if a.is_zero() {
                "s".to_string()
            } else if a.is_negative() {
                format!("s-{}", fmt_rational(&-a))
            } else {
                format!("s+{}", fmt_rational(&a))
            };
            out.push('(');
            out.push_str(&body);
            out.push(')');
            if *m > 1 {
                out.push_str(&format!("^{m}"));
            }
        }
        Some(out)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut small = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if n.is_multiple_of(&i) {
            small.push(i.clone());
            let j = &n / &i;
            if j != i {
                out.push(j);
            }
        }
        i += 1;
    }
    small.extend(out.into_iter().rev());
    small
}

fn candidate_roots(p: &UnivariatePoly) -> Vec<Q> {
    if p.degree() < 1 {
        return vec![];
    }
    // Clear denominators to an integer polynomial.
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs.iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
    let a0 = ints.first().unwrap();
    let an = ints.last().unwrap();
    let mut out = Vec::new();
    for num in divisors(a0) {
        for den in divisors(an) {
            let r = Q::new(num.clone(), den.clone());
            out.push(r.clone());
            out.push(-r);
        }
    }
    out.sort();
    out.dedup();
    out
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let m = match i {
                0 => String::new(),
                1 => "s".to_string(),
                _ => format!("s^{i}"),
            };
            terms.push((m, c.clone()));
        }
        write!(f, "{}", super::parse::render_terms(&terms))
    }
}

impl<'a> std::ops::Add<&'a UnivariatePoly> for &'a UnivariatePoly {
    type Output = UnivariatePoly;
    fn add(self, o: &UnivariatePoly) -> UnivariatePoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UnivariatePoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> std::ops::Sub<&'a UnivariatePoly> for &'a UnivariatePoly {
    type Output = UnivariatePoly;
    fn sub(self, o: &UnivariatePoly) -> UnivariatePoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UnivariatePoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> std::ops::Mul<&'a UnivariatePoly> for &'a UnivariatePoly {
    type Output = UnivariatePoly;
    fn mul(self, o: &UnivariatePoly) -> UnivariatePoly {
        if self.is_zero() || o.is_zero() {
            return UnivariatePoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UnivariatePoly::new(out)
    }
}
