//! Arithmetic in GF(2^m) for 1 <= m <= 16.
//!
//! Every degree has one fixed modulus (see [`MODULI`]), so a field is
//! identified by its degree alone. Contexts are built once, cached for the
//! lifetime of the process and handed out as cheap `Copy` handles.
//!
//! Elements are stored as the bit pattern of their polynomial residue:
//! bit `i` is the coefficient of `x^i`.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 16;

/// Published moduli, indexed by degree. Bit `i` is the coefficient of `x^i`.
///
/// | m | modulus |
/// |---|---------|
/// | 1 | x |
/// | 2 | x^2 + x + 1 |
/// | 3 | x^3 + x + 1 |
/// | 4 | x^4 + x + 1 |
/// | 5 | x^5 + x^2 + 1 |
/// | 6 | x^6 + x + 1 |
/// | 7 | x^7 + x + 1 |
/// | 8 | x^8 + x^4 + x^3 + x^2 + 1 |
/// | 9 | x^9 + x^4 + 1 |
/// | 10 | x^10 + x^3 + 1 |
/// | 11 | x^11 + x^2 + 1 |
/// | 12 | x^12 + x^6 + x^4 + x + 1 |
/// | 13 | x^13 + x^4 + x^3 + x + 1 |
/// | 14 | x^14 + x^10 + x^6 + x + 1 |
/// | 15 | x^15 + x + 1 |
/// | 16 | x^16 + x^12 + x^3 + x + 1 |
///
/// For m = 1 the modulus `x` is a formality: GF(2)[x]/(x) is the prime field.
pub const MODULI: [u32; 17] = [
    0, 0x2, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B,
    0x4443, 0x8003, 0x1100B,
];

struct Tables {
    m: u32,
    modulus: u32,
    /// `exp[i] = g^i`, doubled in length so products of logs need no reduction.
    exp: Vec<u16>,
    /// `log[x]` for x != 0; `log[0]` is unused.
    log: Vec<u32>,
}

static TABLES: [OnceLock<Tables>; 17] = [const { OnceLock::new() }; 17];

/// Multiplies two residues modulo `modulus` by shift-and-add.
fn poly_mulmod(mut a: u32, mut b: u32, modulus: u32, m: u32) -> u32 {
    let mut acc = 0u32;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> m & 1 == 1 {
            a ^= modulus;
        }
    }
    acc
}

fn poly_degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

/// Irreducibility over F_2 by trial division with every polynomial of
/// degree 1..=deg/2.
pub fn is_irreducible(p: u32) -> bool {
    let d = poly_degree(p);
    if d < 1 {
        return false;
    }
    for divisor in 2u32..(1u32 << (d / 2 + 1)) {
        if poly_degree(divisor) >= 1 && poly_rem(p, divisor) == 0 {
            return false;
        }
    }
    true
}

impl Tables {
    fn build(m: u32) -> Tables {
        let modulus = MODULI[m as usize];
        assert!(is_irreducible(modulus) && poly_degree(modulus) == m as i32);
        let q = 1usize << m;
        let order = q - 1;
        let mut log = vec![0u32; q];
        let mut exp = vec![0u16; 2 * order];
        // Smallest element whose powers run through the whole group.
        let generator = (1..q as u32)
            .find(|&g| {
                let mut x = 1u32;
                for k in 1..=order {
                    x = poly_mulmod(x, g, modulus, m);
                    if x == 1 {
                        return k == order;
                    }
                }
                false
            })
            .expect("multiplicative group of a finite field is cyclic");
        let mut x = 1u32;
        for i in 0..order {
            exp[i] = x as u16;
            exp[i + order] = x as u16;
            log[x as usize] = i as u32;
            x = poly_mulmod(x, generator, modulus, m);
        }
        Tables { m, modulus, exp, log }
    }
}

/// Handle to the field GF(2^m).
#[derive(Clone, Copy)]
pub struct Field {
    t: &'static Tables,
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        self.t.m == other.t.m
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.t.m.hash(state)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})", self.t.m)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gf2_{}", self.t.m)
    }
}

impl Field {
    /// Returns the context for GF(2^m).
    pub fn new(m: u32) -> Result<Field> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        let t = TABLES[m as usize].get_or_init(|| Tables::build(m));
        Ok(Field { t })
    }

    /// GF(2).
    pub fn gf2() -> Field {
        Field::new(1).expect("degree 1 is in range")
    }

    /// Parses a context string `gf2_m`.
    pub fn parse(name: &str) -> Result<Field> {
        let m = name
            .strip_prefix("gf2_")
            .and_then(|s| s.parse::<u32>().ok())
            .ok_or_else(|| Error::parse(0, format!("bad field spec {name:?}, expected gf2_m")))?;
        Field::new(m)
    }

    pub fn degree(&self) -> u32 {
        self.t.m
    }

    pub fn modulus(&self) -> u32 {
        self.t.modulus
    }

    /// Number of elements, 2^m.
    pub fn order(&self) -> usize {
        1 << self.t.m
    }

    pub fn is_prime_field(&self) -> bool {
        self.t.m == 1
    }

    /// The generator used for the exp/log tables.
    pub fn generator(&self) -> u16 {
        self.t.exp[if self.t.m == 1 { 0 } else { 1 }]
    }

    /// Every element in increasing bit order.
    pub fn elements(&self) -> impl Iterator<Item = u16> {
        (0..self.order() as u32).map(|x| x as u16)
    }

    pub fn contains(&self, bits: u16) -> bool {
        (bits as usize) < self.order()
    }

    /// Wraps raw bits as an element of this field.
    pub fn elem(&self, bits: u16) -> Result<FieldElem> {
        if !self.contains(bits) {
            return Err(Error::ElementOutOfRange { bits: bits as u32, m: self.t.m });
        }
        Ok(FieldElem { bits, m: self.t.m as u8 })
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if self.t.m == 1 {
            return a & b;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        self.t.exp[(self.t.log[a as usize] + self.t.log[b as usize]) as usize]
    }

    /// Multiplicative inverse, `None` for zero.
    #[inline]
    pub fn inv(&self, a: u16) -> Option<u16> {
        if a == 0 {
            return None;
        }
        if self.t.m == 1 {
            return Some(1);
        }
        let order = (self.order() - 1) as u32;
        Some(self.t.exp[((order - self.t.log[a as usize]) % order) as usize])
    }

    pub fn div(&self, a: u16, b: u16) -> Result<u16> {
        let binv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, binv))
    }

    #[inline]
    pub fn square(&self, a: u16) -> u16 {
        self.mul(a, a)
    }

    pub fn pow(&self, a: u16, e: u64) -> u16 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if self.t.m == 1 {
            return 1;
        }
        let order = (self.order() - 1) as u64;
        let l = self.t.log[a as usize] as u64 * (e % order) % order;
        self.t.exp[l as usize]
    }

    /// The unique square root, a^(2^(m-1)).
    pub fn sqrt(&self, a: u16) -> u16 {
        self.pow(a, 1u64 << (self.t.m - 1))
    }

    /// Absolute trace a + a^2 + ... + a^(2^(m-1)), always 0 or 1.
    pub fn trace(&self, a: u16) -> u16 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.t.m {
            acc ^= x;
            x = self.square(x);
        }
        acc
    }

    /// Smallest s with s^2 + s = c, if any. Solvable iff trace(c) = 0.
    pub fn solve_artin_schreier(&self, c: u16) -> Option<u16> {
        if self.trace(c) != 0 {
            return None;
        }
        self.elements().find(|&s| self.square(s) ^ s == c)
    }

    /// Smallest element of trace 1.
    pub fn trace_one(&self) -> u16 {
        self.elements().find(|&a| self.trace(a) == 1).expect("trace is onto")
    }

    /// Lowercase hex of an element.
    pub fn format(&self, a: u16) -> String {
        format!("{a:x}")
    }

    /// Parses lowercase or uppercase hex.
    pub fn parse_elem(&self, s: &str) -> Result<u16> {
        let v = u32::from_str_radix(s, 16)
            .map_err(|_| Error::parse(0, format!("bad field element {s:?}")))?;
        if v as usize >= self.order() {
            return Err(Error::ElementOutOfRange { bits: v, m: self.t.m });
        }
        Ok(v as u16)
    }
}

/// An element tagged with the degree of its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldElem {
    bits: u16,
    m: u8,
}

/// Field operations accepted by [`arith`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithOp {
    Add,
    Mul,
    /// Inverse of the first operand; the second is only checked for context.
    Inv,
    Div,
}

impl FieldElem {
    pub fn bits(&self) -> u16 {
        self.bits
    }

    pub fn field(&self) -> Field {
        Field::new(self.m as u32).expect("element carries a valid degree")
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn sqrt(&self) -> FieldElem {
        FieldElem { bits: self.field().sqrt(self.bits), m: self.m }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.bits)
    }
}

/// Checked binary arithmetic on tagged elements.
pub fn arith(op: ArithOp, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
    if a.m != b.m {
        return Err(Error::FieldMismatch(a.m as u32, b.m as u32));
    }
    let f = a.field();
    let bits = match op {
        ArithOp::Add => f.add(a.bits, b.bits),
        ArithOp::Mul => f.mul(a.bits, b.bits),
        ArithOp::Inv => f.inv(a.bits).ok_or(Error::DivisionByZero)?,
        ArithOp::Div => f.div(a.bits, b.bits)?,
    };
    Ok(FieldElem { bits, m: a.m })
}
