//! Exact arithmetic in the biquadratic field ℚ(√2, √3).
//!
//! Every element is stored over the flat basis `{1, √2, √3, √6}` with
//! arbitrary-precision rational coefficients. `BigRational` keeps each
//! coefficient reduced with a positive denominator, so two elements are equal
//! exactly when their coefficient vectors are equal.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const SQRT2: f64 = std::f64::consts::SQRT_2;
const SQRT3: f64 = 1.732_050_807_568_877_2;
const SQRT6: f64 = 2.449_489_742_783_178;

/// Index of a basis element of ℚ(√2, √3) over ℚ.
const RAT: usize = 0;
const R2: usize = 1;
const R3: usize = 2;
const R6: usize = 3;

/// `a + b√2 + c√3 + d√6` with exact rational `a, b, c, d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    coeffs: [BigRational; 4],
}

impl FieldElem {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Self { coeffs: [a, b, c, d] }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den` as a rational element. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::new(q, BigRational::zero(), BigRational::zero(), BigRational::zero())
    }

    pub fn sqrt2() -> Self {
        Self::unit(R2)
    }

    pub fn sqrt3() -> Self {
        Self::unit(R3)
    }

    pub fn sqrt6() -> Self {
        Self::unit(R6)
    }

    fn unit(k: usize) -> Self {
        let mut x = Self::zero();
        x.coeffs[k] = BigRational::one();
        x
    }

    /// Coefficients over `(1, √2, √3, √6)`.
    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.coeffs
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.coeffs[RAT]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[RAT].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// True when the element lies in ℚ.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self {
            coeffs: std::array::from_fn(|k| &self.coeffs[k] * q),
        }
    }

    /// The automorphism √2 ↦ −√2 (fixes √3).
    fn conj2(&self) -> Self {
        let [a, b, c, d] = &self.coeffs;
        Self::new(a.clone(), -b, c.clone(), -d)
    }

    /// The automorphism √3 ↦ −√3 (fixes √2).
    fn conj3(&self) -> Self {
        let [a, b, c, d] = &self.coeffs;
        Self::new(a.clone(), b.clone(), -c, -d)
    }

    /// Multiplicative inverse via the norm form: `x · σ₃(x)` lies in ℚ(√2) and
    /// multiplying that by its √2-conjugate lands in ℚ.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c3 = self.conj3();
        let partial = self * &c3;
        let c2 = partial.conj2();
        let norm = &partial * &c2;
        debug_assert!(norm.is_rational());
        let scale = norm.coeffs[RAT].recip();
        Ok((&c3 * &c2).scale(&scale))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Exact sign: −1, 0 or +1.
    pub fn signum(&self) -> i8 {
        // Write x = P + Q√3 with P, Q ∈ ℚ(√2).
        let [a, b, c, d] = &self.coeffs;
        let p = (a.clone(), b.clone());
        let q = (c.clone(), d.clone());
        let sp = sign_q2(&p);
        let sq = sign_q2(&q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return if sp == 0 { sq } else { sp };
        }
        // Opposite signs: compare P² against 3Q².
        let (pa, pb) = &p;
        let (qa, qb) = &q;
        let three = BigRational::from_integer(BigInt::from(3));
        let two = BigRational::from_integer(BigInt::from(2));
        let p2 = (pa * pa + &two * pb * pb, &two * pa * pb);
        let q2 = (
            &three * (qa * qa + &two * qb * qb),
            &three * &two * qa * qb,
        );
        let diff = (p2.0 - q2.0, p2.1 - q2.1);
        // |P| > √3|Q| means P decides the sign.
        match sign_q2(&diff) {
            1 => sp,
            -1 => sq,
            _ => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn to_f64(&self) -> f64 {
        let f = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
        let [a, b, c, d] = &self.coeffs;
        f(a) + f(b) * SQRT2 + f(c) * SQRT3 + f(d) * SQRT6
    }
}

/// Sign of `a + b√2`.
fn sign_q2((a, b): &(BigRational, BigRational)) -> i8 {
    let sa = sign_rat(a);
    let sb = sign_rat(b);
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return if sa == 0 { sb } else { sa };
    }
    let two = BigRational::from_integer(BigInt::from(2));
    match (a * a).cmp(&(&two * b * b)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

fn sign_rat(q: &BigRational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl Default for FieldElem {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for FieldElem {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &'a FieldElem) -> FieldElem {
        FieldElem {
            coeffs: std::array::from_fn(|k| &self.coeffs[k] + &rhs.coeffs[k]),
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &'a FieldElem) -> FieldElem {
        FieldElem {
            coeffs: std::array::from_fn(|k| &self.coeffs[k] - &rhs.coeffs[k]),
        }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &'a FieldElem) -> FieldElem {
        // Product table on basis indices: (target index, integer factor).
        // √2√3 = √6, √2√6 = 2√3, √3√6 = 3√2, √6√6 = 6.
        const TABLE: [[(usize, i64); 4]; 4] = [
            [(RAT, 1), (R2, 1), (R3, 1), (R6, 1)],
            [(R2, 1), (RAT, 2), (R6, 1), (R3, 2)],
            [(R3, 1), (R6, 1), (RAT, 3), (R2, 3)],
            [(R6, 1), (R3, 2), (R2, 3), (RAT, 6)],
        ];
        let mut out: [BigRational; 4] = std::array::from_fn(|_| BigRational::zero());
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (k, factor) = TABLE[i][j];
                let prod = x * y;
                if factor == 1 {
                    out[k] += prod;
                } else {
                    out[k] += prod * BigInt::from(factor);
                }
            }
        }
        FieldElem { coeffs: out }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            coeffs: std::array::from_fn(|k| -&self.coeffs[k]),
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

/// Division panics on a zero divisor; use [`FieldElem::checked_div`] to get an error instead.
impl<'a> Div<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: &'a FieldElem) -> FieldElem {
        self.checked_div(rhs).expect("division by zero in ℚ(√2,√3)")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem { (&self).$method(&rhs) }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &'a FieldElem) -> FieldElem { (&self).$method(rhs) }
        }
        impl<'a> $tr<FieldElem> for &'a FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem { self.$method(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&FieldElem> for FieldElem {
    fn add_assign(&mut self, rhs: &FieldElem) {
        for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *x += y;
        }
    }
}

impl AddAssign for FieldElem {
    fn add_assign(&mut self, rhs: FieldElem) {
        *self += &rhs;
    }
}

impl SubAssign<&FieldElem> for FieldElem {
    fn sub_assign(&mut self, rhs: &FieldElem) {
        for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *x -= y;
        }
    }
}

impl SubAssign for FieldElem {
    fn sub_assign(&mut self, rhs: FieldElem) {
        *self -= &rhs;
    }
}

impl MulAssign<&FieldElem> for FieldElem {
    fn mul_assign(&mut self, rhs: &FieldElem) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for FieldElem {
    fn sum<I: Iterator<Item = FieldElem>>(iter: I) -> Self {
        iter.fold(FieldElem::zero(), |acc, x| acc + x)
    }
}

const RADICALS: [&str; 4] = ["", "√2", "√3", "√6"];

/// Renders as `p/q + (r/s)√2 + t√3 - √6`; zero terms are omitted and `0`
/// stands for the zero element.
impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let negative = q.is_negative();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let mag = q.abs();
            if k == RAT {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(RADICALS[k])?;
            } else if mag.is_integer() {
                write!(f, "{}{}", mag, RADICALS[k])?;
            } else {
                write!(f, "({}){}", mag, RADICALS[k])?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({self})")
    }
}

/// Parses the [`Display`](fmt::Display) format. `sqrt2` is accepted as an
/// ASCII spelling of `√2`.
impl FromStr for FieldElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid field element: {s:?}"));
        let normalized = s
            .replace("sqrt", "√")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>();
        if normalized.is_empty() {
            return Err(bad());
        }

        // Split into signed terms at top-level +/- (never inside parentheses).
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut depth = 0usize;
        for (i, ch) in normalized.chars().enumerate() {
            match ch {
                '(' => {
                    depth += 1;
                    current.push(ch);
                }
                ')' => {
                    depth = depth.checked_sub(1).ok_or_else(bad)?;
                    current.push(ch);
                }
                '+' | '-' if depth == 0 => {
                    if i != 0 {
                        if current.is_empty() {
                            return Err(bad());
                        }
                        terms.push((negative, std::mem::take(&mut current)));
                    }
                    negative = ch == '-';
                }
                _ => current.push(ch),
            }
        }
        if current.is_empty() || depth != 0 {
            return Err(bad());
        }
        terms.push((negative, current));

        let mut out = FieldElem::zero();
        for (negative, term) in terms {
            let (coef, k) = match term.find('√') {
                None => (term.as_str(), RAT),
                Some(pos) => {
                    let k = match &term[pos..] {
                        "√2" => R2,
                        "√3" => R3,
                        "√6" => R6,
                        _ => return Err(bad()),
                    };
                    (&term[..pos], k)
                }
            };
            let coef = coef.strip_prefix('(').map_or(Some(coef), |c| c.strip_suffix(')'));
            let coef = coef.ok_or_else(bad)?;
            let q = if coef.is_empty() {
                if k == RAT {
                    return Err(bad());
                }
                BigRational::one()
            } else {
                parse_rational(coef).ok_or_else(bad)?
            };
            let q = if negative { -q } else { q };
            out.coeffs[k] += q;
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

impl serde::Serialize for FieldElem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
