//! Exact scalar arithmetic over the rationals and prime fields.
//!
//! Every quantity in this crate is a [`Scalar`]: either an arbitrary-precision
//! rational or an element of F_p for a prime p. There is no floating point
//! anywhere; all equalities downstream are exact.
//!
//! Scalars carry their field tag. Mixing fields in one operation is a
//! programming error and panics; public constructors that accept user data
//! (parsers, JSON loaders) validate field consistency up front and return
//! [`crate::Error::FieldMismatch`] instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The ground field K: either ℚ or F_p with p prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Parses `"Q"` / `"q"` or `"F<p>"` / `"f<p>"`.
    pub fn parse(s: &str) -> Result<Field, Error> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Field::Rationals);
        }
        if let Some(rest) = t.strip_prefix(['F', 'f']) {
            let p: u64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::BadFieldSpec(s.to_string()))?;
            if !is_prime(p) {
                return Err(Error::BadFieldSpec(format!("{} is not prime", p)));
            }
            return Ok(Field::Prime(p));
        }
        Err(Error::BadFieldSpec(s.to_string()))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { p: *p, value: 0 },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(BigRational::one()),
            Field::Prime(p) => Scalar::Fp { p: *p, value: 1 % p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { p: *p, value: r }
            }
        }
    }

    pub fn characteristic_zero(&self) -> bool {
        matches!(self, Field::Rationals)
    }

    /// Parses a scalar in the external string form: `p/q` or `p` over ℚ
    /// (sign allowed), a decimal integer in `[0, p)` over F_p.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, Error> {
        let t = s.trim();
        match self {
            Field::Rationals => {
                let (num, den) = match t.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (t, "1"),
                };
                let n: BigInt = num
                    .parse()
                    .map_err(|_| Error::BadScalar(s.to_string()))?;
                let d: BigInt = den
                    .parse()
                    .map_err(|_| Error::BadScalar(s.to_string()))?;
                if d.is_zero() {
                    return Err(Error::BadScalar(s.to_string()));
                }
                Ok(Scalar::Q(BigRational::new(n, d)))
            }
            Field::Prime(_p) => {
                let n: i64 = t.parse().map_err(|_| Error::BadScalar(s.to_string()))?;
                Ok(self.from_i64(n))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{}", p),
        }
    }
}

/// An exact field element together with its field tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { p: u64, value: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { p, value } => *value == 1 % p,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(r) => {
                assert!(!r.is_zero(), "inverse of zero");
                Scalar::Q(r.recip())
            }
            Scalar::Fp { p, value } => {
                assert!(*value != 0, "inverse of zero");
                Scalar::Fp {
                    p: *p,
                    value: mod_inv(*value, *p),
                }
            }
        }
    }

    fn check_same_field(&self, other: &Scalar) {
        assert!(
            self.field() == other.field(),
            "mixed-field scalar operation: {} vs {}",
            self.field(),
            other.field()
        );
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                // canonical form: q > 0, gcd = 1, "n" when q = 1
                let (num, den) = (r.numer(), r.denom());
                debug_assert!(den.is_positive() || num.is_zero());
                if den.is_one() {
                    write!(f, "{}", num)
                } else {
                    write!(f, "{}/{}", num, den)
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{}", value),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same_field(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { p, value: a }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                p: *p,
                value: (a + b) % p,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check_same_field(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Fp { p, value: a }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                p: *p,
                value: (a + p - b) % p,
            },
            _ => unreachable!(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same_field(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { p, value: a }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                p: *p,
                value: mulmod(*a, *b, *p),
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { p, value } => Scalar::Fp {
                p: *p,
                value: (p - value) % p,
            },
        }
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p
    let mut result: u64 = 1;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mulmod(result, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    result
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
