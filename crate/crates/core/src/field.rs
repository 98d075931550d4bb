//! Binary extension field arithmetic, GF(2^h) for 1 <= h <= 16.
//!
//! Elements are bit patterns in polynomial basis, stored as `u16`. Addition
//! is XOR. Multiplication goes through log/antilog tables built once per
//! field, plus a full product table for h <= 8.
//!
//! Symbol (payload) operations are defined for h in {1, 8, 16}: a GF(2)
//! symbol is a plain bit string, a GF(2^8) symbol holds one element per byte
//! and a GF(2^16) symbol holds one little-endian element per two bytes. The
//! remaining degrees exist for coefficient arithmetic only.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Element = u16;

pub const MAX_DEGREE: u32 = 16;

/// Reduction polynomials used by [`FieldSpec::standard`], indexed by degree.
const STANDARD_POLYS: [u32; 17] = [
    0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443,
    0x8003, 0x1100B,
];

/// The parameters of a binary extension field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    degree: u32,
    poly: u32,
    alpha: Element,
}

impl FieldSpec {
    /// Validates `poly` (degree `degree`, irreducible) and picks the smallest
    /// element of full multiplicative order as the primitive element.
    pub fn new(degree: u32, poly: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(Error::param(format!(
                "extension degree {degree} outside 1..={MAX_DEGREE}"
            )));
        }
        if poly_degree(poly) != Some(degree) {
            return Err(Error::param(format!(
                "reduction polynomial {poly:#x} does not have degree {degree}"
            )));
        }
        if !is_irreducible(poly) {
            return Err(Error::param(format!(
                "reduction polynomial {poly:#x} is reducible"
            )));
        }
        let order = (1u32 << degree) - 1;
        let alpha = (1..=order)
            .find(|&a| multiplicative_order(a, poly, order) == order)
            .ok_or_else(|| Error::param(format!("no primitive element modulo {poly:#x}")))?;
        Ok(Self {
            degree,
            poly,
            alpha: alpha as Element,
        })
    }

    /// GF(2^degree) with the built-in reduction polynomial
    /// (0x11D for GF(2^8), 0x1100B for GF(2^16)).
    pub fn standard(degree: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(Error::param(format!(
                "extension degree {degree} outside 1..={MAX_DEGREE}"
            )));
        }
        Self::new(degree, STANDARD_POLYS[degree as usize])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn reduction_polynomial(&self) -> u32 {
        self.poly
    }

    pub fn primitive_element(&self) -> Element {
        self.alpha
    }

    /// Number of field elements, `2^h`.
    pub fn size(&self) -> u32 {
        1 << self.degree
    }

    /// Bytes per element in a symbol, or `None` when symbols are bit strings
    /// (GF(2)) or the degree has no symbol layout.
    pub fn element_bytes(&self) -> Option<usize> {
        match self.degree {
            8 => Some(1),
            16 => Some(2),
            _ => None,
        }
    }

    pub fn supports_symbols(&self) -> bool {
        matches!(self.degree, 1 | 8 | 16)
    }

    /// Number of field elements carried by a symbol of `symbol_size` bytes.
    pub fn elements_per_symbol(&self, symbol_size: usize) -> usize {
        match self.degree {
            1 => symbol_size * 8,
            16 => symbol_size / 2,
            _ => symbol_size,
        }
    }

    pub fn check_symbol_size(&self, symbol_size: usize) -> Result<()> {
        if !self.supports_symbols() {
            return Err(Error::param(format!(
                "GF(2^{}) has no symbol layout",
                self.degree
            )));
        }
        if symbol_size == 0 {
            return Err(Error::param("symbol size must be positive"));
        }
        if self.degree == 16 && !symbol_size.is_multiple_of(2) {
            return Err(Error::param(format!(
                "symbol size {symbol_size} is not a whole number of GF(2^16) elements"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#x}", self.degree, self.poly)
    }
}

fn poly_degree(p: u32) -> Option<u32> {
    (p != 0).then(|| 31 - p.leading_zeros())
}

/// Remainder of carry-less division `a mod b`.
fn poly_mod(mut a: u32, b: u32) -> u32 {
    let db = poly_degree(b).expect("division by the zero polynomial");
    while let Some(da) = poly_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

fn is_irreducible(poly: u32) -> bool {
    let degree = poly_degree(poly).unwrap_or(0);
    if degree == 0 {
        return false;
    }
    // Any factorization has a factor of degree <= degree/2.
    let limit = 1u32 << (degree / 2 + 1);
    (2..limit).all(|d| poly_mod(poly, d) != 0)
}

/// Carry-less multiply then reduce. Slow path, used only while building tables.
fn slow_mul(a: u32, b: u32, poly: u32) -> u32 {
    let mut acc = 0u64;
    for i in 0..32 {
        if (b >> i) & 1 == 1 {
            acc ^= (a as u64) << i;
        }
    }
    let pd = poly_degree(poly).unwrap();
    for bit in (pd..64).rev() {
        if (acc >> bit) & 1 == 1 {
            acc ^= (poly as u64) << (bit - pd);
        }
    }
    acc as u32
}

fn slow_pow(a: u32, mut e: u32, poly: u32) -> u32 {
    let mut base = a;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(acc, base, poly);
        }
        base = slow_mul(base, base, poly);
        e >>= 1;
    }
    acc
}

fn multiplicative_order(a: u32, poly: u32, group_order: u32) -> u32 {
    let mut order = group_order;
    let mut rest = group_order;
    let mut p = 2;
    while rest > 1 {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            while order.is_multiple_of(p) && slow_pow(a, order / p, poly) == 1 {
                order /= p;
            }
        }
        p += 1;
    }
    order
}

/// A field with its lookup tables.
pub struct Field {
    spec: FieldSpec,
    exp: Vec<Element>,
    log: Vec<u32>,
    product: Vec<u8>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field").field("spec", &self.spec).finish()
    }
}

static STANDARD_FIELDS: [OnceLock<Field>; 17] = [const { OnceLock::new() }; 17];

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        let order = (spec.size() - 1) as usize;
        let mut exp = vec![0 as Element; 2 * order];
        let mut log = vec![0u32; spec.size() as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().take(order).enumerate() {
            *slot = x as Element;
            log[x as usize] = i as u32;
            x = slow_mul(x, spec.alpha as u32, spec.poly);
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        let mut field = Self {
            spec,
            exp,
            log,
            product: Vec::new(),
        };
        if spec.degree <= 8 {
            let q = spec.size() as usize;
            let mut product = vec![0u8; 256 * 256];
            for a in 1..q {
                for b in 1..q {
                    product[(a << 8) | b] = field.mul(a as Element, b as Element) as u8;
                }
            }
            field.product = product;
        }
        field
    }

    /// Shared instance of the standard field of the given degree.
    pub fn standard(degree: u32) -> Result<&'static Field> {
        let spec = FieldSpec::standard(degree)?;
        Ok(STANDARD_FIELDS[degree as usize].get_or_init(|| Field::new(spec)))
    }

    pub fn gf2() -> &'static Field {
        Self::standard(1).expect("GF(2) is always constructible")
    }

    pub fn gf256() -> &'static Field {
        Self::standard(8).expect("GF(2^8) is always constructible")
    }

    pub fn gf65536() -> &'static Field {
        Self::standard(16).expect("GF(2^16) is always constructible")
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn degree(&self) -> u32 {
        self.spec.degree
    }

    /// Largest element value, `2^h - 1`.
    pub fn max_element(&self) -> Element {
        (self.spec.size() - 1) as Element
    }

    pub fn contains(&self, a: Element) -> bool {
        (a as u32) < self.spec.size()
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    pub fn inv(&self, a: Element) -> Result<Element> {
        if a == 0 {
            return Err(Error::Domain("zero has no multiplicative inverse".into()));
        }
        Ok(self.inv_nonzero(a))
    }

    #[inline]
    pub(crate) fn inv_nonzero(&self, a: Element) -> Element {
        debug_assert!(a != 0);
        let order = self.spec.size() - 1;
        self.exp[((order - self.log[a as usize]) % order) as usize]
    }

    /// `alpha^e` for any exponent; the exponent is reduced modulo `2^h - 1`.
    pub fn alpha_pow(&self, e: u64) -> Element {
        let order = (self.spec.size() - 1) as u64;
        self.exp[(e % order) as usize]
    }

    pub fn pow(&self, a: Element, e: u64) -> Element {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.spec.size() - 1) as u64;
        let l = self.log[a as usize] as u64;
        self.exp[((l * (e % order)) % order) as usize]
    }

    /// Discrete logarithm base alpha, `None` for zero.
    pub fn log(&self, a: Element) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// `dst <- dst + coeff * src` element-wise over a symbol.
    pub fn symbol_axpy(&self, dst: &mut [u8], src: &[u8], coeff: Element) -> Result<()> {
        if dst.len() != src.len() {
            return Err(Error::contract(format!(
                "symbol size mismatch: {} vs {}",
                dst.len(),
                src.len()
            )));
        }
        self.spec.check_symbol_size(dst.len())?;
        if !self.contains(coeff) {
            return Err(Error::Domain(format!("{coeff:#x} is not in {}", self.spec)));
        }
        self.axpy(dst, src, coeff);
        Ok(())
    }

    /// Unchecked form of [`Field::symbol_axpy`]; sizes must already agree.
    #[inline]
    pub(crate) fn axpy(&self, dst: &mut [u8], src: &[u8], coeff: Element) {
        debug_assert_eq!(dst.len(), src.len());
        match coeff {
            0 => {}
            1 => xor_into(dst, src),
            _ => match self.spec.degree {
                8 => {
                    let row = &self.product[(coeff as usize) << 8..][..256];
                    for (d, &s) in dst.iter_mut().zip(src) {
                        *d ^= row[s as usize];
                    }
                }
                16 => {
                    let lc = self.log[coeff as usize];
                    for (d, s) in dst.chunks_exact_mut(2).zip(src.chunks_exact(2)) {
                        let x = u16::from_le_bytes([s[0], s[1]]);
                        if x != 0 {
                            let p = self.exp[(lc + self.log[x as usize]) as usize].to_le_bytes();
                            d[0] ^= p[0];
                            d[1] ^= p[1];
                        }
                    }
                }
                d => unreachable!("no symbol layout for GF(2^{d})"),
            },
        }
    }

    /// `dst <- coeff * dst` element-wise.
    pub(crate) fn scale(&self, dst: &mut [u8], coeff: Element) {
        match coeff {
            1 => {}
            0 => dst.fill(0),
            _ => match self.spec.degree {
                8 => {
                    let row = &self.product[(coeff as usize) << 8..][..256];
                    for d in dst.iter_mut() {
                        *d = row[*d as usize];
                    }
                }
                16 => {
                    let lc = self.log[coeff as usize];
                    for d in dst.chunks_exact_mut(2) {
                        let x = u16::from_le_bytes([d[0], d[1]]);
                        if x != 0 {
                            let p = self.exp[(lc + self.log[x as usize]) as usize].to_le_bytes();
                            d.copy_from_slice(&p);
                        }
                    }
                }
                d => unreachable!("no symbol layout for GF(2^{d})"),
            },
        }
    }

    /// `dst <- dst + coeff * src` over coefficient vectors.
    #[inline]
    pub(crate) fn vec_axpy(&self, dst: &mut [Element], src: &[Element], coeff: Element) {
        match coeff {
            0 => {}
            1 => {
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d ^= s;
                }
            }
            _ => {
                let lc = self.log[coeff as usize];
                for (d, &s) in dst.iter_mut().zip(src) {
                    if s != 0 {
                        *d ^= self.exp[(lc + self.log[s as usize]) as usize];
                    }
                }
            }
        }
    }

    pub(crate) fn vec_scale(&self, dst: &mut [Element], coeff: Element) {
        if coeff == 1 {
            return;
        }
        for d in dst.iter_mut() {
            *d = self.mul(*d, coeff);
        }
    }

    /// Reads element `index` of a symbol.
    pub fn symbol_element(&self, symbol: &[u8], index: usize) -> Element {
        match self.spec.degree {
            1 => ((symbol[index / 8] >> (index % 8)) & 1) as Element,
            16 => u16::from_le_bytes([symbol[2 * index], symbol[2 * index + 1]]),
            _ => symbol[index] as Element,
        }
    }
}

/// Bytewise XOR of two equal-length buffers.
#[inline]
pub fn xor_into(dst: &mut [u8], src: &[u8]) {
    debug_assert_eq!(dst.len(), src.len());
    for (d, &s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}
