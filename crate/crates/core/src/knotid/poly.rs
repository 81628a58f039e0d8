use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Laurent polynomial in one variable with integer coefficients.
///
/// Only non-zero coefficients are stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i64) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        p.add_term(coeff, exp);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (exp, coeff) in terms {
            p.add_term(coeff, exp);
        }
        p
    }

    pub fn add_term(&mut self, coeff: i64, exp: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// (exponent, coefficient) in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by x^k.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, *c)).collect() }
    }

    /// The substitution x -> x⁻¹.
    pub fn mirror(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (-e, *c)).collect() }
    }

    /// The substitution x -> x^k for an exact divisor `k` of every exponent;
    /// `None` when some exponent is not divisible.
    pub fn divide_exponents(&self, k: i64) -> Option<LaurentPoly> {
        self.terms
            .iter()
            .map(|(e, c)| (e % k == 0).then_some((e / k, *c)))
            .collect::<Option<BTreeMap<_, _>>>()
            .map(|terms| LaurentPoly { terms })
    }

    pub fn scale_exponents(&self, k: i64) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e * k, *c)).collect() }
    }

    pub fn eval(&self, x: i64) -> Option<i64> {
        // only meaningful for ±1 when negative exponents are present
        if self.min_exp().is_some_and(|e| e < 0) && x.abs() != 1 {
            return None;
        }
        Some(self.terms.iter().map(|(e, c)| c * x.pow(e.unsigned_abs() as u32)).sum())
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        (0..k).fold(LaurentPoly::one(), |acc, _| &acc * self)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(c, e);
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.add_term(ca * cb, ea + eb);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Increasing exponents, e.g. `t^-2 - t^-1 + 1 - t + t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_in(f, 't')
    }
}

impl LaurentPoly {
    pub fn write_in(&self, f: &mut impl fmt::Write, var: char) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        write!(f, "{var}")?;
                    } else {
                        write!(f, "{var}^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Parses the `Display` form and the KnotInfo style `2*t^(-3)- t+ 1`.
    pub fn parse(text: &str, var: char) -> Option<LaurentPoly> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace() && *c != '(' && *c != ')').collect();
        if cleaned.is_empty() {
            return None;
        }
        let mut p = LaurentPoly::zero();
        let mut rest = cleaned.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            // a term ends at the next sign that is not an exponent sign
            let bytes = body.as_bytes();
            let mut end = bytes.len();
            for i in 1..bytes.len() {
                if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                    end = i;
                    break;
                }
            }
            let term = &body[..end];
            rest = &body[end..];
            let (coeff, exp) = match term.find(var) {
                None => (term.parse::<i64>().ok()?, 0),
                Some(pos) => {
                    let c = match term[..pos].trim_end_matches('*') {
                        "" => 1,
                        s => s.parse::<i64>().ok()?,
                    };
                    let e = match &term[pos + 1..] {
                        "" => 1,
                        s => s.strip_prefix('^')?.parse::<i64>().ok()?,
                    };
                    (c, e)
                }
            };
            p.add_term(sign * coeff, exp);
        }
        Some(p)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}
