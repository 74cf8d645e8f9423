//! Exact field elements: arbitrary-precision rationals or residues modulo a prime.
//!
//! Constants built without a field context (`Scalar::zero()`, `Scalar::from(3)`)
//! are rationals; mixing one with a residue coerces it into `GF(p)`. This lets
//! generic code write `Scalar::one()` without threading the modulus around.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::ParseError;

#[derive(Clone, Debug)]
pub enum Scalar {
    Q(BigRational),
    Zp { v: u64, p: u64 },
}

/// The base field of a session.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn reduce_int(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    n.mod_floor(&m).to_u64().expect("residue fits in u64")
}

fn rat_to_mod(q: &BigRational, p: u64) -> u64 {
    let num = reduce_int(q.numer(), p);
    let den = reduce_int(q.denom(), p);
    assert!(den != 0, "rational {q} is not p-integral for p={p}");
    mulmod(num, powmod(den, p - 2, p), p)
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Q(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Q(BigRational::one())
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Scalar::Q(BigRational::new(n.into(), d.into()))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Zp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Zp { v, .. } => *v == 1,
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Scalar::Q(_) => None,
            Scalar::Zp { p, .. } => Some(*p),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Zp { v, p } => Scalar::Zp { v: powmod(*v, p - 2, *p), p: *p },
        })
    }

    /// The rational value, if this is a rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Zp { .. } => None,
        }
    }

    fn to_mod(&self, p: u64) -> u64 {
        match self {
            Scalar::Q(q) => rat_to_mod(q, p),
            Scalar::Zp { v, p: p2 } => {
                assert_eq!(p, *p2, "mixing residues of different moduli");
                *v
            }
        }
    }

    fn common_modulus(a: &Scalar, b: &Scalar) -> Option<u64> {
        a.modulus().or(b.modulus())
    }

    fn combine(
        a: &Scalar,
        b: &Scalar,
        fq: impl Fn(&BigRational, &BigRational) -> BigRational,
        fp: impl Fn(u64, u64, u64) -> u64,
    ) -> Scalar {
        match (a, b) {
            (Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(fq(x, y)),
            _ => {
                let p = Scalar::common_modulus(a, b).unwrap();
                Scalar::Zp { v: fp(a.to_mod(p), b.to_mod(p), p), p }
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::Q(BigRational::from_integer(n.into()))
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Q(q)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if let (Scalar::Q(x), Scalar::Q(y)) = (self, o) {
            if y.is_zero() {
                return self.clone();
            }
            if x.is_integer() && y.is_integer() {
                return Scalar::Q(BigRational::from_integer(x.numer() + y.numer()));
            }
        }
        Scalar::combine(self, o, |x, y| x + y, |x, y, p| ((x as u128 + y as u128) % p as u128) as u64)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        if let (Scalar::Q(x), Scalar::Q(y)) = (self, o) {
            if y.is_zero() {
                return self.clone();
            }
            if x.is_integer() && y.is_integer() {
                return Scalar::Q(BigRational::from_integer(x.numer() - y.numer()));
            }
        }
        Scalar::combine(self, o, |x, y| x - y, |x, y, p| ((x as u128 + p as u128 - y as u128) % p as u128) as u64)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        // exact elimination multiplies mostly by 0 and ±1; skip the gcd there
        if let (Scalar::Q(x), Scalar::Q(y)) = (self, o) {
            if x.is_zero() || y.is_zero() {
                return Scalar::zero();
            }
            if x.is_integer() && y.is_integer() {
                return Scalar::Q(BigRational::from_integer(x.numer() * y.numer()));
            }
        }
        Scalar::combine(self, o, |x, y| x * y, mulmod)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(q) => Scalar::Q(-q),
            Scalar::Zp { v, p } => Scalar::Zp { v: (p - v) % p, p: *p },
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { (&self).$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Scalar) -> bool {
        match (self, o) {
            (Scalar::Q(x), Scalar::Q(y)) => x == y,
            _ => {
                let p = Scalar::common_modulus(self, o).unwrap();
                self.to_mod(p) == o.to_mod(p)
            }
        }
    }
}

impl Eq for Scalar {}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, o: &Scalar) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Rationals compare numerically; residues by their representative in `0..p`.
impl Ord for Scalar {
    fn cmp(&self, o: &Scalar) -> Ordering {
        match (self, o) {
            (Scalar::Q(x), Scalar::Q(y)) => x.cmp(y),
            _ => {
                let p = Scalar::common_modulus(self, o).unwrap();
                self.to_mod(p).cmp(&o.to_mod(p))
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Q(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Zp { v, .. } => write!(f, "{v}"),
        }
    }
}

impl Field {
    pub fn zero(&self) -> Scalar {
        self.embed(&Scalar::zero())
    }

    pub fn one(&self) -> Scalar {
        self.embed(&Scalar::one())
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.embed(&Scalar::from(n))
    }

    /// Bring a scalar into this field (rationals are reduced modulo p).
    pub fn embed(&self, s: &Scalar) -> Scalar {
        match self {
            Field::Rational => match s {
                Scalar::Q(_) => s.clone(),
                Scalar::Zp { .. } => panic!("residue used in a rational session"),
            },
            Field::Prime(p) => Scalar::Zp { v: s.to_mod(*p), p: *p },
        }
    }

    /// Parse `a`, `-a`, `a/b` (rationals) or an integer residue.
    pub fn parse(&self, text: &str) -> Result<Scalar, ParseError> {
        let t = text.trim();
        let bad = || ParseError::new(format!("bad scalar `{t}`"));
        let q = match t.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(BigInt::from_str(t).map_err(|_| bad())?),
        };
        match self {
            Field::Rational => Ok(Scalar::Q(q)),
            Field::Prime(p) => {
                if reduce_int(q.denom(), *p) == 0 {
                    return Err(ParseError::new(format!("`{t}` has denominator divisible by {p}")));
                }
                Ok(Scalar::Zp { v: rat_to_mod(&q, *p), p: *p })
            }
        }
    }

    pub fn header(&self) -> String {
        match self {
            Field::Rational => "q".into(),
            Field::Prime(p) => format!("gf:{p}"),
        }
    }

    /// Parse `q` or `gf:<p>`; `p` must be prime.
    pub fn parse_mode(text: &str) -> Result<Field, ParseError> {
        let t = text.trim();
        if t == "q" {
            return Ok(Field::Rational);
        }
        let p = t
            .strip_prefix("gf:")
            .and_then(|s| s.parse::<u64>().ok())
            .ok_or_else(|| ParseError::new(format!("bad field mode `{t}`")))?;
        if p < 2 || p > u32::MAX as u64 || !(2..).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            return Err(ParseError::new(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn of(s: &Scalar) -> Field {
        match s.modulus() {
            Some(p) => Field::Prime(p),
            None => Field::Rational,
        }
    }
}
