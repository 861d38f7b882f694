//! Polynomials in `t_1, ..., t_n` with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::hessfn::binomial;
use crate::perm::Permutation;
use crate::rational::Rat;

pub type Exponents = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Exponents, Rat>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rat::one())
    }

    /// The variable `t_i`, 1-based.
    pub fn var(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "variable t{i} out of range for n={n}");
        let mut e = vec![0; n];
        e[i - 1] = 1;
        let mut p = Self::zero(n);
        p.add_term(e, Rat::one());
        p
    }

    /// `t_a - t_b`.
    pub fn difference(n: usize, a: usize, b: usize) -> Self {
        &Self::var(n, a) - &Self::var(n, b)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, Rat)>>(n: usize, terms: I) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get() + &c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum total degree of a stored term, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    /// True when every term has total degree `d` (vacuous for zero).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self { n: self.n, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// Substitutes `t_i -> t_{sigma(i)}`.
    pub fn permute_vars(&self, sigma: &Permutation) -> Self {
        assert_eq!(sigma.n(), self.n, "permutation size");
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            let mut image = vec![0; self.n];
            for (i, &x) in e.iter().enumerate() {
                image[sigma.at(i + 1) - 1] = x;
            }
            out.terms.insert(image, c.clone());
        }
        out
    }

    /// Substitutes `t_a := t_b`.
    pub fn substitute(&self, a: usize, b: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            let mut image = e.clone();
            image[b - 1] += image[a - 1];
            image[a - 1] = 0;
            out.add_term(image, c.clone());
        }
        out
    }

    /// Membership in the principal ideal `(t_a - t_b)`.
    pub fn divisible_by_difference(&self, a: usize, b: usize) -> bool {
        assert_ne!(a, b, "difference of a variable with itself");
        self.substitute(a, b).is_zero()
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.n, "evaluation point length");
        let mut total = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term *= x;
                }
            }
            total += &term;
        }
        total
    }

    /// Coordinates in the monomial basis of degree `d`, indexed by [`monomial_index`].
    /// Terms of any other degree are ignored.
    pub fn coordinates(&self, d: u32) -> Vec<(usize, Rat)> {
        let mut coords: Vec<(usize, Rat)> = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().sum::<u32>() == d)
            .map(|(e, c)| (monomial_index(e), c.clone()))
            .collect();
        coords.sort_by_key(|(i, _)| *i);
        coords
    }
}

/// Number of monomials of total degree `d` in `n` variables.
pub fn monomial_count(n: usize, d: u32) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    binomial(d as u64 + n as u64 - 1, n as u64 - 1) as usize
}

/// Dense index of a monomial among those of its degree.
///
/// Stars and bars turn `e` into the subset `{e_1 + ... + e_k + k - 1 : k < n}`,
/// which is ranked colexicographically.
pub fn monomial_index(e: &[u32]) -> usize {
    let mut partial = 0u64;
    let mut rank = 0u64;
    for (k, &x) in e.iter().enumerate().take(e.len().saturating_sub(1)) {
        partial += x as u64;
        rank += binomial(partial + k as u64, k as u64 + 1);
    }
    rank as usize
}

/// Inverse of [`monomial_index`] for monomials of degree `d` in `n` variables.
pub fn monomial_from_index(n: usize, d: u32, index: usize) -> Exponents {
    if n == 0 {
        return Vec::new();
    }
    let mut positions = vec![0u64; n - 1];
    let mut rest = index as u64;
    for k in (1..n).rev() {
        let mut p = k as u64 - 1;
        while binomial(p + 1, k as u64) <= rest {
            p += 1;
        }
        rest -= binomial(p, k as u64);
        positions[k - 1] = p;
    }
    // Position `p_k` encodes the partial sum `e_1 + ... + e_{k+1} = p_k - k`.
    let mut parts = Vec::with_capacity(n);
    let mut last = 0i64;
    for (k, &p) in positions.iter().enumerate() {
        let cumulative = p as i64 - k as i64;
        parts.push((cumulative - last) as u32);
        last = cumulative;
    }
    parts.push((d as i64 - last) as u32);
    parts
}

/// All monomials of degree `d` in `n` variables, ordered by [`monomial_index`].
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Exponents> {
    (0..monomial_count(n, d)).map(|i| monomial_from_index(n, d, i)).collect()
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "variable count");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "variable count");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "variable count");
        let mut out = MultiPoly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Graded lex with t1 first: highest degree, then largest exponent of t1.
        let mut ordered: Vec<(&Exponents, &Rat)> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (idx, (e, c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("t{}", i + 1) } else { format!("t{}^{}", i + 1, k) })
                .collect();
            if factors.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{magnitude}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse polynomial term {0:?}")]
pub struct ParsePolyError(pub String);

impl MultiPoly {
    /// Parses the textual form produced by `Display`, e.g. `3*t1^2*t3 - 1/2*t2`.
    pub fn parse(n: usize, s: &str) -> Result<Self, ParsePolyError> {
        let mut out = Self::zero(n);
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(out);
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !current.is_empty() && !current.ends_with('^') {
                pieces.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && current.is_empty() {
                negative ^= ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(ParsePolyError(s.to_string()));
        }
        pieces.push((negative, current));
        for (negative, piece) in pieces {
            let mut coeff = Rat::one();
            let mut e = vec![0u32; n];
            for factor in piece.split('*') {
                if let Some(var) = factor.strip_prefix('t') {
                    let (index, power) = match var.split_once('^') {
                        Some((i, p)) => (i, p.parse::<u32>().map_err(|_| ParsePolyError(piece.clone()))?),
                        None => (var, 1),
                    };
                    let i: usize = index.parse().map_err(|_| ParsePolyError(piece.clone()))?;
                    if i == 0 || i > n {
                        return Err(ParsePolyError(piece.clone()));
                    }
                    e[i - 1] += power;
                } else {
                    let c = Rat::from_str(factor).map_err(|_| ParsePolyError(piece.clone()))?;
                    coeff *= &c;
                }
            }
            out.add_term(e, if negative { -coeff } else { coeff });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn permute_swaps_difference() {
        let p = MultiPoly::difference(2, 1, 2);
        let swap = Permutation::transposition(2, 1, 2);
        assert_eq!(p.permute_vars(&swap), MultiPoly::difference(2, 2, 1));
        let sq = &t(3, 1) * &t(3, 1);
        assert_eq!(sq.permute_vars(&Permutation::identity(3)), sq);
    }

    #[test]
    fn divisibility_examples() {
        let p = &(&t(3, 1) * &t(3, 1)) - &(&t(3, 3) * &t(3, 3));
        assert!(p.divisible_by_difference(1, 3));
        assert!(!t(2, 1).divisible_by_difference(1, 2));
        assert!(MultiPoly::zero(3).divisible_by_difference(2, 3));
    }

    #[test]
    fn display_and_parse() {
        let p = MultiPoly::parse(3, "3*t1^2*t3 - 1/2*t2").unwrap();
        assert_eq!(p.to_string(), "3*t1^2*t3 - 1/2*t2");
        assert_eq!(MultiPoly::parse(3, "-t1 + t2").unwrap(), MultiPoly::difference(3, 2, 1));
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
        assert_eq!(MultiPoly::constant(2, Rat::from_int(-4)).to_string(), "-4");
        assert!(MultiPoly::parse(2, "t3").is_err());
    }

    #[test]
    fn monomial_counts_match_binomials() {
        for n in 1..=6 {
            for d in 0..=12u32 {
                let all = monomials_of_degree(n, d);
                assert_eq!(all.len(), monomial_count(n, d));
                for (i, e) in all.iter().enumerate() {
                    assert_eq!(e.len(), n);
                    assert_eq!(e.iter().sum::<u32>(), d);
                    assert_eq!(monomial_index(e), i);
                }
            }
        }
    }

    #[test]
    fn monomial_count_brute_force() {
        fn count(n: usize, d: u32) -> usize {
            if n == 1 {
                return 1;
            }
            (0..=d).map(|k| count(n - 1, d - k)).sum()
        }
        for n in 1..=6 {
            for d in 0..=12u32 {
                assert_eq!(monomial_count(n, d), count(n, d), "n={n} d={d}");
            }
        }
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, n), -5i64..6), 0..6)
            .prop_map(move |terms| MultiPoly::from_terms(n, terms.into_iter().map(|(e, c)| (e, Rat::from_int(c)))))
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((1..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_one_line(v).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn permute_then_inverse_is_identity((p, s) in (1usize..=5).prop_flat_map(|n| (arb_poly(n), arb_perm(n)))) {
            prop_assert_eq!(p.permute_vars(&s).permute_vars(&s.inverse()), p.clone());
            prop_assert_eq!(p.permute_vars(&s).total_degree(), p.total_degree());
            prop_assert_eq!(p.permute_vars(&s).min_degree(), p.min_degree());
        }

        #[test]
        fn divisibility_absorbs_products(
            (p, q) in (arb_poly(4), arb_poly(4)),
            a in 1usize..=4,
            b in 1usize..=4,
        ) {
            prop_assume!(a != b);
            let multiple = &p * &MultiPoly::difference(4, a, b);
            prop_assert!(multiple.divisible_by_difference(a, b));
            prop_assert!((&multiple * &q).divisible_by_difference(a, b));
            if p.divisible_by_difference(a, b) {
                prop_assert!((&p * &q).divisible_by_difference(a, b));
            }
        }

        #[test]
        fn display_round_trips(p in arb_poly(3)) {
            prop_assert_eq!(MultiPoly::parse(3, &p.to_string()).unwrap(), p);
        }

        #[test]
        fn evaluation_is_a_ring_map(p in arb_poly(3), q in arb_poly(3), x in proptest::collection::vec(-4i64..5, 3)) {
            let point: Vec<Rat> = x.into_iter().map(Rat::from_int).collect();
            prop_assert_eq!((&p * &q).eval(&point), &p.eval(&point) * &q.eval(&point));
            prop_assert_eq!((&p + &q).eval(&point), &p.eval(&point) + &q.eval(&point));
        }
    }
}
