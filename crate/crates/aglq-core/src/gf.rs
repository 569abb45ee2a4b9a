//! Exact arithmetic in GF(p^n).
//!
//! A field is determined by `(p, n)` alone: the modulus is the
//! lexicographically smallest monic irreducible polynomial of degree `n`
//! over F_p (coefficients compared low-degree-first), and the distinguished
//! generator of the multiplicative group is the lexicographically smallest
//! primitive element. Both choices are deterministic, so two fields with the
//! same `(p, n)` are interchangeable and `q = p^n` is a complete fingerprint
//! for mismatch checks.
//!
//! Elements are packed into a radix-`p` code with the constant coefficient
//! in the most significant digit; numeric order on codes therefore equals
//! low-degree-first lexicographic order on coefficient vectors, which is the
//! tie-break order used for every canonical choice in this crate.

use std::fmt;
use std::sync::OnceLock;

use crate::arith;
use crate::error::{Error, Result};

/// Default cap on q = p^n; construction fails above it.
pub const DEFAULT_SIZE_CAP: u64 = 1 << 20;

/// Absolute ceiling regardless of the configured cap: digit products must
/// stay inside u64.
pub const HARD_SIZE_CAP: u64 = 1 << 31;

/// An element of a specific GF(p^n), tagged with q for mismatch detection.
///
/// Ordering compares codes, i.e. coefficient vectors lexicographically
/// (constant coefficient first).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    q: u64,
    code: u64,
}

impl FieldElement {
    /// Size of the field this element belongs to.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Packed coefficient code in `0..q`.
    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement(q={}, code={})", self.q, self.code)
    }
}

/// Witnesses that `gamma` generates the multiplicative group: for each prime
/// `l` dividing q - 1, `gamma^((q-1)/l)` is recorded and must differ from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCertificate {
    pub gamma: FieldElement,
    pub order: u64,
    pub prime_checks: Vec<(u64, FieldElement)>,
}

/// GF(p^n) with a fixed modulus and a fixed multiplicative generator.
///
/// All operations are pure; the struct is immutable after construction and
/// safe to share across threads.
pub struct Field {
    p: u64,
    n: u32,
    q: u64,
    /// Monic irreducible modulus, constant term first, length n + 1.
    modulus: Vec<u64>,
    /// x^(n+i) reduced mod the modulus, as length-n coefficient vectors.
    xpow_red: Vec<Vec<u64>>,
    generator: GeneratorCertificate,
    /// Lazily built pair of tables: code -> discrete log base gamma
    /// (u32::MAX marks zero) and exponent -> code.
    dlog: OnceLock<(Vec<u32>, Vec<u64>)>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field(p={}, n={}, q={})", self.p, self.n, self.q)
    }
}

impl Field {
    /// Builds GF(p^n) with the default size cap.
    pub fn new(p: u64, n: u32) -> Result<Field> {
        Field::with_cap(p, n, DEFAULT_SIZE_CAP)
    }

    /// Builds GF(p^n), failing with `SizeCap` if p^n exceeds `cap`.
    pub fn with_cap(p: u64, n: u32, cap: u64) -> Result<Field> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::Parse("extension degree must be at least 1".into()));
        }
        let cap = cap.min(HARD_SIZE_CAP);
        let q128 = (p as u128).checked_pow(n).unwrap_or(u128::MAX);
        if q128 > cap as u128 {
            return Err(Error::SizeCap { q: q128, cap });
        }
        let q = q128 as u64;
        let modulus = smallest_irreducible(p, n);

        // x^(n+i) mod modulus for i in 0..n-1, filled by repeated shifts.
        let xn: Vec<u64> = (0..n as usize).map(|i| (p - modulus[i]) % p).collect();
        let mut xpow_red = vec![xn];
        for _ in 1..n {
            let prev = xpow_red.last().unwrap();
            let mut next = vec![0u64; n as usize];
            let carry = prev[n as usize - 1];
            for j in 1..n as usize {
                next[j] = prev[j - 1];
            }
            if carry != 0 {
                let x_n = &xpow_red[0];
                for j in 0..n as usize {
                    next[j] = (next[j] + carry * x_n[j]) % p;
                }
            }
            xpow_red.push(next);
        }

        let mut field = Field {
            p,
            n,
            q,
            modulus,
            xpow_red,
            generator: GeneratorCertificate {
                gamma: FieldElement { q, code: 0 },
                order: 0,
                prime_checks: Vec::new(),
            },
            dlog: OnceLock::new(),
        };
        field.generator = field.find_generator_internal();
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus polynomial, constant term first, monic of degree n.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { q: self.q, code: 0 }
    }

    pub fn one(&self) -> FieldElement {
        self.element(self.one_code())
    }

    /// The fixed generator of the multiplicative group.
    pub fn generator(&self) -> FieldElement {
        self.generator.gamma
    }

    /// The generator together with its primality witnesses.
    pub fn generator_certificate(&self) -> &GeneratorCertificate {
        &self.generator
    }

    /// Wraps a raw code; panics if out of range (internal use).
    pub(crate) fn element(&self, code: u64) -> FieldElement {
        debug_assert!(code < self.q);
        FieldElement { q: self.q, code }
    }

    /// Element from a packed code in `0..q`.
    pub fn from_code(&self, code: u64) -> Result<FieldElement> {
        if code < self.q {
            Ok(FieldElement { q: self.q, code })
        } else {
            Err(Error::Parse(format!(
                "code {} out of range 0..{}",
                code, self.q
            )))
        }
    }

    /// Element from coefficients (constant term first). Shorter slices are
    /// zero-padded; entries are reduced mod p.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.n as usize {
            return Err(Error::Parse(format!(
                "{} coefficients for extension degree {}",
                coeffs.len(),
                self.n
            )));
        }
        let mut full = vec![0u64; self.n as usize];
        for (i, &c) in coeffs.iter().enumerate() {
            full[i] = c % self.p;
        }
        Ok(self.element(self.encode(&full)))
    }

    /// Coefficient vector of an element, constant term first, length n.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u64> {
        self.decode(a.code)
    }

    fn one_code(&self) -> u64 {
        // 1 = coefficient vector (1, 0, .., 0); the constant sits in the
        // most significant digit.
        self.pow_u(self.p, self.n - 1)
    }

    fn pow_u(&self, base: u64, exp: u32) -> u64 {
        base.pow(exp)
    }

    fn encode(&self, coeffs: &[u64]) -> u64 {
        let mut code = 0u64;
        for &c in coeffs {
            code = code * self.p + c;
        }
        code
    }

    fn decode(&self, code: u64) -> Vec<u64> {
        let n = self.n as usize;
        let mut v = vec![0u64; n];
        let mut c = code;
        for i in (0..n).rev() {
            v[i] = c % self.p;
            c /= self.p;
        }
        v
    }

    fn check(&self, a: FieldElement) -> Result<()> {
        if a.q == self.q {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.q, a.q))
        }
    }

    fn check2(&self, a: FieldElement, b: FieldElement) -> Result<()> {
        self.check(a)?;
        self.check(b)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check2(a, b)?;
        Ok(self.element(self.add_c(a.code, b.code)))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check2(a, b)?;
        Ok(self.element(self.sub_c(a.code, b.code)))
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        Ok(self.element(self.neg_c(a.code)))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check2(a, b)?;
        Ok(self.element(self.mul_c(a.code, b.code)))
    }

    /// Multiplicative inverse; fails with `DivisionByZero` on zero.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.code == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.element(self.pow_c(a.code, self.q - 2)))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let binv = self.inv(b)?;
        self.mul(a, binv)
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> Result<FieldElement> {
        self.check(a)?;
        Ok(self.element(self.pow_c(a.code, e)))
    }

    /// The Frobenius map x -> x^p.
    pub fn frobenius(&self, a: FieldElement) -> Result<FieldElement> {
        self.pow(a, self.p)
    }

    pub(crate) fn add_c(&self, a: u64, b: u64) -> u64 {
        if self.n == 1 {
            return (a + b) % self.p;
        }
        let va = self.decode(a);
        let vb = self.decode(b);
        let sum: Vec<u64> = va
            .iter()
            .zip(&vb)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        self.encode(&sum)
    }

    pub(crate) fn sub_c(&self, a: u64, b: u64) -> u64 {
        self.add_c(a, self.neg_c(b))
    }

    pub(crate) fn neg_c(&self, a: u64) -> u64 {
        if self.n == 1 {
            return (self.p - a) % self.p;
        }
        let va = self.decode(a);
        let neg: Vec<u64> = va.iter().map(|&x| (self.p - x) % self.p).collect();
        self.encode(&neg)
    }

    pub(crate) fn mul_c(&self, a: u64, b: u64) -> u64 {
        if self.n == 1 {
            return a * b % self.p;
        }
        let n = self.n as usize;
        let va = self.decode(a);
        let vb = self.decode(b);
        let mut conv = vec![0u64; 2 * n - 1];
        for (i, &x) in va.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in vb.iter().enumerate() {
                conv[i + j] = (conv[i + j] + x * y) % self.p;
            }
        }
        for i in (n..2 * n - 1).rev() {
            let c = conv[i];
            if c == 0 {
                continue;
            }
            conv[i] = 0;
            let red = &self.xpow_red[i - n];
            for j in 0..n {
                conv[j] = (conv[j] + c * red[j]) % self.p;
            }
        }
        conv.truncate(n);
        self.encode(&conv)
    }

    pub(crate) fn pow_c(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = self.one_code();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_c(acc, base);
            }
            base = self.mul_c(base, base);
            e >>= 1;
        }
        acc
    }

    fn find_generator_internal(&self) -> GeneratorCertificate {
        let primes: Vec<u64> = arith::factorize(self.q - 1)
            .into_iter()
            .map(|(l, _)| l)
            .collect();
        // Codes ascend in coefficient-lex order, so the first hit is the
        // canonical generator.
        for code in 1..self.q {
            let ok = primes
                .iter()
                .all(|&l| self.pow_c(code, (self.q - 1) / l) != self.one_code());
            if ok {
                let prime_checks = primes
                    .iter()
                    .map(|&l| (l, self.element(self.pow_c(code, (self.q - 1) / l))))
                    .collect();
                return GeneratorCertificate {
                    gamma: self.element(code),
                    order: self.q - 1,
                    prime_checks,
                };
            }
        }
        unreachable!("every finite field has a multiplicative generator");
    }

    /// Least k >= 1 with a^k = 1; always divides q - 1.
    pub fn element_order(&self, a: FieldElement) -> Result<u64> {
        self.check(a)?;
        if a.code == 0 {
            return Err(Error::ZeroElement);
        }
        let mut ord = self.q - 1;
        for (l, _) in arith::factorize(self.q - 1) {
            while ord % l == 0 && self.pow_c(a.code, ord / l) == self.one_code() {
                ord /= l;
            }
        }
        Ok(ord)
    }

    /// The p^m elements fixed by x -> x^(p^m), i.e. the subfield of order
    /// p^m, sorted in canonical order. Requires m | n.
    pub fn subfield_elements(&self, m: u32) -> Result<Vec<FieldElement>> {
        if m == 0 || self.n % m != 0 {
            return Err(Error::NotDivisor { m, n: self.n });
        }
        let r = self.p.pow(m);
        let mut out = Vec::with_capacity(r as usize);
        out.push(self.zero());
        if r == self.q {
            out.extend((1..self.q).map(|c| self.element(c)));
        } else {
            let step = (self.q - 1) / (r - 1);
            let g = self.pow_c(self.generator.gamma.code, step);
            let mut cur = self.one_code();
            for _ in 0..r - 1 {
                out.push(self.element(cur));
                cur = self.mul_c(cur, g);
            }
        }
        out.sort();
        debug_assert_eq!(out.len(), r as usize);
        Ok(out)
    }

    /// Generator of the multiplicative group of the subfield of order r.
    pub(crate) fn subfield_generator_code(&self, r: u64) -> u64 {
        debug_assert!(r >= 2 && (self.q - 1) % (r - 1) == 0);
        self.pow_c(self.generator.gamma.code, (self.q - 1) / (r - 1))
    }

    fn log_tables(&self) -> &(Vec<u32>, Vec<u64>) {
        self.dlog.get_or_init(|| {
            let mut logs = vec![u32::MAX; self.q as usize];
            let mut exps = vec![0u64; (self.q - 1) as usize];
            let mut cur = self.one_code();
            for k in 0..self.q - 1 {
                logs[cur as usize] = k as u32;
                exps[k as usize] = cur;
                cur = self.mul_c(cur, self.generator.gamma.code);
            }
            (logs, exps)
        })
    }

    /// Discrete log base gamma; `None` for zero.
    pub fn dlog(&self, a: FieldElement) -> Result<Option<u64>> {
        self.check(a)?;
        if a.code == 0 {
            return Ok(None);
        }
        Ok(Some(self.log_tables().0[a.code as usize] as u64))
    }

    /// gamma^k by table lookup.
    pub(crate) fn gamma_pow_c(&self, k: u64) -> u64 {
        self.log_tables().1[(k % (self.q - 1)) as usize]
    }

    /// Canonical text form: "0" for zero, "g^k" otherwise.
    pub fn format_element(&self, a: FieldElement) -> String {
        match self.dlog(a).expect("element of this field") {
            None => "0".to_string(),
            Some(k) => format!("g^{}", k),
        }
    }

    /// Parses "g^k", "g", a coefficient list "[c0,c1,...]", or a bare
    /// integer constant.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        if s == "g" {
            return Ok(self.generator.gamma);
        }
        if let Some(exp) = s.strip_prefix("g^") {
            let k: u64 = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in '{}'", s)))?;
            return self.pow(self.generator.gamma, k);
        }
        if s.starts_with('[') {
            let inner = s
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("unbalanced brackets in '{}'", s)))?;
            let mut coeffs = Vec::new();
            if !inner.trim().is_empty() {
                for part in inner.split(',') {
                    let c: u64 = part
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient '{}'", part)))?;
                    coeffs.push(c);
                }
            }
            return self.from_coeffs(&coeffs);
        }
        let c: u64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("unrecognized element '{}'", s)))?;
        self.from_coeffs(&[c])
    }
}

/// Lexicographically smallest monic irreducible polynomial of degree n over
/// F_p, constant term first.
fn smallest_irreducible(p: u64, n: u32) -> Vec<u64> {
    let n = n as usize;
    if n == 1 {
        // x is irreducible and lex-smallest (constant term 0).
        return vec![0, 1];
    }
    let total = (p as u128).pow(n as u32);
    let mut cand = 0u128;
    while cand < total {
        // Counter digits map big-endian onto (c_0, .., c_{n-1}) so the scan
        // runs in low-degree-first lex order.
        let mut poly = vec![0u64; n + 1];
        poly[n] = 1;
        let mut c = cand;
        for coeff in poly.iter_mut().take(n).rev() {
            *coeff = (c % p as u128) as u64;
            c /= p as u128;
        }
        if is_irreducible(&poly, p) {
            return poly;
        }
        cand += 1;
    }
    unreachable!("irreducible polynomials of every degree exist over F_p");
}

/// Irreducibility by trial division: no monic divisor of degree 1..=n/2.
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let n = poly.len() - 1;
    if n == 1 {
        return true;
    }
    let mut divisor_deg = 1;
    while 2 * divisor_deg <= n {
        let count = (p as u128).pow(divisor_deg as u32);
        let mut cand = 0u128;
        while cand < count {
            let mut div = vec![0u64; divisor_deg + 1];
            div[divisor_deg] = 1;
            let mut c = cand;
            for coeff in div.iter_mut().take(divisor_deg) {
                *coeff = (c % p as u128) as u64;
                c /= p as u128;
            }
            if poly_rem_is_zero(poly, &div, p) {
                return false;
            }
            cand += 1;
        }
        divisor_deg += 1;
    }
    true
}

fn poly_rem_is_zero(poly: &[u64], div: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = poly.to_vec();
    let dd = div.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - 1 - dd;
            for i in 0..dd {
                let sub = lead * div[i] % p;
                let idx = shift + i;
                rem[idx] = (rem[idx] + p - sub) % p;
            }
        }
        rem.pop();
        while rem.len() > dd && *rem.last().unwrap() == 0 {
            rem.pop();
        }
    }
    rem.iter().all(|&c| c == 0)
}
