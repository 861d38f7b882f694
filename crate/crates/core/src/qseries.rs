//! Polynomials in `q`: q-integers, Poincare polynomials and Hilbert series.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::hessfn::HessenbergFunction;
use crate::perm::{factorial, Permutation};

/// Integer polynomial in `q`, without trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial<C: Into<BigInt>>(c: C, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs<C: Into<BigInt>, I: IntoIterator<Item = C>>(coeffs: I) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn scale<C: Into<BigInt>>(&self, c: C) -> Self {
        let c = c.into();
        Self::from_coeffs(self.coeffs.iter().map(|x| x * &c))
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Reduction modulo `q^k`.
    pub fn truncate(&self, k: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(k).cloned())
    }

    pub fn is_palindromic(&self) -> bool {
        let c = &self.coeffs;
        (0..c.len()).all(|i| c[i] == c[c.len() - 1 - i])
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Serialized form `c0,c1,c2,...`; the zero polynomial is `0`.
    pub fn to_csv(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn from_csv(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|part| BigInt::from_str(part.trim()).map_err(|_| format!("bad coefficient {part:?}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::from_coeffs)
    }
}

impl<'a> Add<&'a QPoly> for &'a QPoly {
    type Output = QPoly;

    fn add(self, rhs: &'a QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)))
    }
}

impl<'a> Sub<&'a QPoly> for &'a QPoly {
    type Output = QPoly;

    fn sub(self, rhs: &'a QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)))
    }
}

impl<'a> Mul<&'a QPoly> for &'a QPoly {
    type Output = QPoly;

    fn mul(self, rhs: &'a QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<QPoly> for QPoly {
            type Output = QPoly;

            fn $method(self, rhs: QPoly) -> QPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let mag = c.abs();
            let var = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            f.write_str(&var)?;
        }
        Ok(())
    }
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_csv())
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Self::from_csv(&s).map_err(serde::de::Error::custom)
    }
}

/// `[m]_q = 1 + q + ... + q^{m-1}`.
pub fn q_int(m: usize) -> QPoly {
    QPoly::from_coeffs(vec![1; m])
}

/// `[m]_q! = [1]_q [2]_q ... [m]_q`.
pub fn q_fact(m: usize) -> QPoly {
    (1..=m).fold(QPoly::one(), |acc, k| &acc * &q_int(k))
}

/// `#{j < i : w(j) > w(i), i <= h(j)}`.
pub fn ell_h(h: &HessenbergFunction, w: &Permutation) -> usize {
    let n = h.n();
    let mut count = 0;
    for j in 1..=n {
        for i in j + 1..=h.get(j) {
            if w.at(j) > w.at(i) {
                count += 1;
            }
        }
    }
    count
}

/// Distribution of `ell_h` over `S_n`.
pub fn poincare_direct(h: &HessenbergFunction) -> QPoly {
    let n = h.n();
    let dim = h.dimension();
    let counts = (0..factorial(n))
        .into_par_iter()
        .fold(
            || vec![0u64; dim + 1],
            |mut acc, r| {
                acc[ell_h(h, &Permutation::from_lex_rank(n, r))] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; dim + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    QPoly::from_coeffs(counts)
}

/// Sum over `j` of `q^{h(j)-j}` times the polynomial of the minor `h^j`,
/// memoized over the minors encountered.
pub fn poincare_recursive(h: &HessenbergFunction) -> QPoly {
    fn go(h: &HessenbergFunction, memo: &mut HashMap<HessenbergFunction, QPoly>) -> QPoly {
        if h.n() == 1 {
            return QPoly::one();
        }
        if let Some(p) = memo.get(h) {
            return p.clone();
        }
        let mut total = QPoly::zero();
        for j in 1..=h.n() {
            let minor = h.minor(j).expect("n >= 2");
            total = &total + &go(&minor, memo).shift(h.get(j) - j);
        }
        memo.insert(h.clone(), total.clone());
        total
    }
    go(h, &mut HashMap::new())
}

/// Closed form for `h = (h1, n, ..., n)`:
/// `[h1][n-1]! + (n-1) q^{h1-1} [n-h1][n-2]!`.
pub fn poincare_h1_closed(n: usize, h1: usize) -> QPoly {
    assert!(2 <= h1 && h1 <= n, "need 2 <= h1 <= n");
    let first = &q_int(h1) * &q_fact(n - 1);
    let second = (&q_int(n - h1) * &q_fact(n - 2)).shift(h1 - 1).scale(n as u64 - 1);
    &first + &second
}

/// `(1+q)[n-1]! + (n-1) q [n-2][n-2]!`, the polynomial of `(2, n, ..., n)`.
pub fn f_n(n: usize) -> QPoly {
    assert!(n >= 3, "need n >= 3");
    let first = &q_int(2) * &q_fact(n - 1);
    let second = (&q_int(n - 2) * &q_fact(n - 2)).shift(1).scale(n as u64 - 1);
    &first + &second
}

/// The polynomial of `(2, n-1, ..., n-1, n, n)`: computed from `ell_h` at
/// `n = 4` and by the four-term recurrence above that.
pub fn lollipop_pn(n: usize) -> QPoly {
    assert!(n >= 4, "need n >= 4");
    if n == 4 {
        return poincare_direct(&HessenbergFunction::lollipop_p(4).expect("n = 4"));
    }
    let prev = lollipop_pn(n - 1);
    let one_plus_q = q_int(2);
    let a = &(&one_plus_q * &one_plus_q) * &q_fact(n - 2);
    let b = (&q_int(n - 3) * &q_fact(n - 3)).scale((n - 2) as u64);
    let b = &b * &QPoly::from_coeffs([0, 1, 1]);
    let inner = &(&one_plus_q * &q_fact(n - 3)) + &(&q_int(n - 4) * &q_fact(n - 4)).shift(1).scale((n - 3) as u64);
    let c = &(&QPoly::monomial(1, 1) + &QPoly::monomial(1, n - 3)).scale((n - 1) as u64) * &inner;
    let d = &q_int(n - 4).shift(1) * &prev;
    &(&(&a + &b) + &c) + &d
}

/// `(1 + 2nq + n(n-1)q^2)[n-2]! + n(n-3)/2 q^{n-3}`.
pub fn q_n(n: usize) -> QPoly {
    assert!(n >= 4, "need n >= 4");
    let n64 = n as u64;
    let lead = QPoly::from_coeffs([1, 2 * n64, n64 * (n64 - 1)]);
    &(&lead * &q_fact(n - 2)) + &QPoly::monomial(n64 * (n64 - 3) / 2, n - 3)
}

/// `prod_{j<n} [h(j)-j+1]_q`, the Hilbert series of the invariant subring.
pub fn hilb_invariants(h: &HessenbergFunction) -> QPoly {
    (1..h.n()).fold(QPoly::one(), |acc, j| &acc * &q_int(h.get(j) - j + 1))
}

/// Bounds on the graded pieces of the subring generated in degree two, for
/// `(2, n-1, ..., n-1, n, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubringBounds {
    pub a: QPoly,
    pub b: QPoly,
    pub c: QPoly,
    pub d: QPoly,
    pub total: QPoly,
}

pub fn subring_bounds(n: usize) -> SubringBounds {
    assert!(n >= 4, "need n >= 4");
    let base = q_fact(n - 2);
    let n64 = n as u64;
    let a = &q_int(2).pow(2) * &base;
    let b = (&QPoly::from_coeffs([0, 1, 1]) * &base).scale(n64 - 1);
    let c = b.clone();
    let d = base.shift(2).scale(n64 * n64 - 3 * n64 + 1);
    let total = &(&(&a + &b) + &c) + &d;
    SubringBounds { a, b, c, d, total }
}

/// `(1 + 2nq + n(n-1)q^2)[n-2]!`.
pub fn subring_upper_bound(n: usize) -> QPoly {
    subring_bounds(n).total
}
