//! Exact scalars over the rationals and prime fields.
//!
//! A [`Scalar`] does not know its own field; every arithmetic operation goes
//! through the [`FieldSpec`] that owns it. Rationals are reduced big
//! fractions, residues are canonical representatives in `0..p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field: either ℚ or 𝔽_p with `p` prime and below 2³¹.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    P(u32),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::Field(format!("{p} is not a prime below 2^31")));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    /// 0 for ℚ, `p` for 𝔽_p.
    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(BigRational::zero()),
            FieldSpec::Prime(_) => Scalar::P(0),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::P(v.rem_euclid(*p as i64) as u32),
        }
    }

    /// `num/den` as a field element. Panics if `den` vanishes in the field.
    pub fn frac(&self, num: i64, den: i64) -> Scalar {
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        self.mul(&n, &self.inv(&d).expect("denominator vanishes in the field"))
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Q(q) => q.is_zero(),
            Scalar::P(v) => *v == 0,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            (FieldSpec::Prime(p), Scalar::P(x), Scalar::P(y)) => {
                Scalar::P(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Q(x)) => Scalar::Q(-x),
            (FieldSpec::Prime(p), Scalar::P(x)) => Scalar::P(if *x == 0 { 0 } else { p - x }),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Q(x), Scalar::Q(y)) => {
                if x.is_zero() || y.is_zero() {
                    Scalar::Q(BigRational::zero())
                } else if x.is_one() {
                    Scalar::Q(y.clone())
                } else if y.is_one() {
                    Scalar::Q(x.clone())
                } else {
                    Scalar::Q(x * y)
                }
            }
            (FieldSpec::Prime(p), Scalar::P(x), Scalar::P(y)) => {
                Scalar::P(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Q(x)) => Some(Scalar::Q(x.recip())),
            (FieldSpec::Prime(p), Scalar::P(x)) => {
                let g = (*x as i64).extended_gcd(&(*p as i64));
                Some(Scalar::P(g.x.rem_euclid(*p as i64) as u32))
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Q(_)) => true,
            (FieldSpec::Prime(p), Scalar::P(v)) => v < p,
            _ => false,
        }
    }

    /// Parses `"3"`, `"-1/2"` or `"4 mod 5"`. Fractions and integers are
    /// reduced into 𝔽_p; a `mod` suffix must name this field's prime.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::Format(format!("cannot parse scalar {text:?} in {self}"));
        if let Some((value, modulus)) = text.split_once("mod") {
            let modulus: u64 = modulus.trim().parse().map_err(|_| bad())?;
            let FieldSpec::Prime(p) = self else {
                return Err(bad());
            };
            if modulus != *p as u64 {
                return Err(Error::Field(format!(
                    "residue {text:?} does not belong to {self}"
                )));
            }
            let v: BigInt = value.trim().parse().map_err(|_| bad())?;
            return Ok(self.reduce_bigint(&v));
        }
        let q: BigRational = match text.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(text.parse().map_err(|_| bad())?),
        };
        match self {
            FieldSpec::Rationals => Ok(Scalar::Q(q)),
            FieldSpec::Prime(_) => {
                let n = self.reduce_bigint(q.numer());
                let d = self.reduce_bigint(q.denom());
                let d = self.inv(&d).ok_or_else(bad)?;
                Ok(self.mul(&n, &d))
            }
        }
    }

    fn reduce_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Scalar::P(r.to_u32().expect("residue fits"))
            }
        }
    }

    /// Canonical text form, inverse to [`FieldSpec::parse_scalar`].
    pub fn format_scalar(&self, a: &Scalar) -> String {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Q(q)) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            (FieldSpec::Prime(p), Scalar::P(v)) => format!("{v} mod {p}"),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    /// Short form used in reports: `-1/2` or `4`.
    pub fn display_scalar(&self, a: &Scalar) -> String {
        match a {
            Scalar::Q(q) if q.is_integer() => q.numer().to_string(),
            Scalar::Q(q) => format!("{}/{}", q.numer(), q.denom()),
            Scalar::P(v) => v.to_string(),
        }
    }

    /// Whether `-1 == 1` (characteristic 2).
    pub fn is_char_two(&self) -> bool {
        matches!(self, FieldSpec::Prime(2))
    }
}

impl Scalar {
    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Q(q) if q.is_negative())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `0`, `QQ`, `rationals`, `p`, `Fp` or `GF(p)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Q" | "QQ" | "q" | "0" | "rationals" => return Ok(FieldSpec::Rationals),
            _ => {}
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix('F'))
            .or_else(|| t.strip_prefix('p'))
            .unwrap_or(t);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Field(format!("unknown field {s:?}")))?;
        FieldSpec::prime(p)
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}
