//! Finite commutative unitary rings presented by addition and
//! multiplication tables, with constructors for the usual families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::semigroup::{
    ElementId, FiniteSemigroup, DEFAULT_CHECK_SEED, DEFAULT_ORDER_CAP, EXHAUSTIVE_CHECK_ORDER,
    SAMPLED_TRIPLES,
};

/// Largest base-ring order accepted by `make_quotient_poly`.
pub const POLY_BASE_MAX_ORDER: usize = 16;

/// A finite commutative ring with identity. Both tables are dense and
/// row-major; `zero` and `one` are the additive and multiplicative
/// identities, equal only in the one-element zero ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRing {
    order: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: ElementId,
    one: ElementId,
    label: String,
}

impl FiniteRing {
    /// Build and validate a ring from raw tables. The additive and
    /// multiplicative identities are located automatically.
    pub fn from_tables(
        label: impl Into<String>,
        order: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
    ) -> Result<Self> {
        Self::from_tables_seeded(label, order, add, mul, DEFAULT_CHECK_SEED)
    }

    pub fn from_tables_seeded(
        label: impl Into<String>,
        order: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        seed: u64,
    ) -> Result<Self> {
        let label = label.into();
        if order == 0 {
            return Err(Error::input(format!("ring {label:?}: order must be positive")));
        }
        if order > DEFAULT_ORDER_CAP {
            return Err(Error::resource(format!(
                "ring {label:?}: order {order} exceeds cap {DEFAULT_ORDER_CAP}"
            )));
        }
        for (name, t) in [("addition", &add), ("multiplication", &mul)] {
            if t.len() != order * order {
                return Err(Error::input(format!(
                    "ring {label:?}: {name} table has {} entries, expected {}",
                    t.len(),
                    order * order
                )));
            }
            if let Some(&bad) = t.iter().find(|&&x| x as usize >= order) {
                return Err(Error::input(format!(
                    "ring {label:?}: {name} entry {bad} out of range for order {order}"
                )));
            }
        }
        let identity_of = |t: &[u32]| {
            (0..order).find(|&e| (0..order).all(|b| t[e * order + b] == b as u32))
        };
        let Some(zero) = identity_of(&add) else {
            return Err(Error::input(format!("ring {label:?}: no additive identity")));
        };
        let Some(one) = identity_of(&mul) else {
            return Err(Error::input(format!("ring {label:?}: no multiplicative identity")));
        };
        let r = FiniteRing {
            order,
            add,
            mul,
            neg: Vec::new(),
            zero: ElementId(zero as u32),
            one: ElementId(one as u32),
            label,
        };
        r.validate(seed)?;
        let neg = (0..order)
            .map(|a| {
                (0..order as u32)
                    .find(|&b| r.add[a * order + b as usize] == r.zero.0)
                    .expect("validated rings have additive inverses")
            })
            .collect();
        Ok(FiniteRing { neg, ..r })
    }

    fn validate(&self, seed: u64) -> Result<()> {
        let n = self.order;
        let bad = |law: &str, a: usize, b: usize, c: usize| {
            Err(Error::input(format!(
                "ring {:?}: {law} fails at ({a}, {b}, {c})",
                self.label
            )))
        };
        for a in 0..n {
            for b in a + 1..n {
                if self.add[a * n + b] != self.add[b * n + a] {
                    return bad("additive commutativity", a, b, 0);
                }
                if self.mul[a * n + b] != self.mul[b * n + a] {
                    return bad("multiplicative commutativity", a, b, 0);
                }
            }
        }
        for a in 0..n {
            if !(0..n).any(|b| self.add[a * n + b] == self.zero.0) {
                return Err(Error::input(format!(
                    "ring {:?}: {a} has no additive inverse",
                    self.label
                )));
            }
        }
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            let ab_c = self.add[self.add[a * n + b] as usize * n + c];
            let a_bc = self.add[a * n + self.add[b * n + c] as usize];
            if ab_c != a_bc {
                return bad("additive associativity", a, b, c).map(|_: ()| ());
            }
            let m_ab_c = self.mul[self.mul[a * n + b] as usize * n + c];
            let m_a_bc = self.mul[a * n + self.mul[b * n + c] as usize];
            if m_ab_c != m_a_bc {
                return bad("multiplicative associativity", a, b, c).map(|_: ()| ());
            }
            let lhs = self.mul[a * n + self.add[b * n + c] as usize];
            let rhs = self.add[self.mul[a * n + b] as usize * n + self.mul[a * n + c] as usize];
            if lhs != rhs {
                return bad("distributivity", a, b, c).map(|_: ()| ());
            }
            Ok(())
        };
        if n <= EXHAUSTIVE_CHECK_ORDER {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..SAMPLED_TRIPLES {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn zero(&self) -> ElementId {
        self.zero
    }

    pub fn one(&self) -> ElementId {
        self.one
    }

    #[inline]
    pub fn add(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.add[a.index() * self.order + b.index()])
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.mul[a.index() * self.order + b.index()])
    }

    /// Additive inverse.
    #[inline]
    pub fn neg(&self, a: ElementId) -> ElementId {
        ElementId(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: ElementId, b: ElementId) -> ElementId {
        self.add(a, self.neg(b))
    }

    pub(crate) fn check_id(&self, a: ElementId) -> Result<()> {
        if a.index() >= self.order {
            return Err(Error::input(format!(
                "element {a} out of range for {:?} of order {}",
                self.label, self.order
            )));
        }
        Ok(())
    }

    /// The multiplicative semigroup on the same carrier.
    pub fn mult_semigroup(&self) -> FiniteSemigroup {
        FiniteSemigroup::from_table(self.label.clone(), self.order, self.mul.clone())
            .expect("multiplication of a validated ring is a commutative semigroup")
    }

    /// Elements with a multiplicative inverse.
    pub fn units(&self) -> ElementSet {
        let mut set = ElementSet::empty(self.order);
        for a in 0..self.order {
            if self.mul[a * self.order..(a + 1) * self.order].contains(&self.one.0) {
                set.insert(ElementId(a as u32));
            }
        }
        set
    }

    /// Does every element square to itself?
    pub fn is_boolean(&self) -> bool {
        (0..self.order as u32).all(|a| {
            let a = ElementId(a);
            self.mul(a, a) == a
        })
    }

    /// `n * 1` for a nonnegative integer `n`, by repeated doubling.
    pub fn int_embed(&self, n: u64) -> ElementId {
        let mut acc = self.zero;
        let mut base = self.one;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            n >>= 1;
        }
        acc
    }

    /// Additive order of `a`.
    pub fn additive_order(&self, a: ElementId) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.zero {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    /// Characteristic: the additive order of `1`.
    pub fn characteristic(&self) -> usize {
        if self.order == 1 {
            1
        } else {
            self.additive_order(self.one)
        }
    }
}

/// The ring `Z/n` with elements indexed by their residues.
pub fn make_zmod(n: u64) -> Result<FiniteRing> {
    make_zmod_capped(n, DEFAULT_ORDER_CAP)
}

pub fn make_zmod_capped(n: u64, cap: usize) -> Result<FiniteRing> {
    if n == 0 {
        return Err(Error::input("modulus must be positive"));
    }
    if n as usize > cap.min(DEFAULT_ORDER_CAP) {
        return Err(Error::resource(format!(
            "Z/{n} has order {n}, cap is {}",
            cap.min(DEFAULT_ORDER_CAP)
        )));
    }
    let n = n as usize;
    let mut add = vec![0u32; n * n];
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            add[a * n + b] = ((a + b) % n) as u32;
            mul[a * n + b] = ((a * b) % n) as u32;
        }
    }
    FiniteRing::from_tables(format!("Z/{n}"), n, add, mul)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Factor a prime power, if it is one.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut k = 0;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            return (rest == 1).then_some((p, k));
        }
        p += 1;
    }
    Some((q, 1))
}

// Dense polynomial helpers over Z/p, coefficients ascending by degree.

fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u64) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * k.max(1)];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p;
        }
    }
    // modulus is monic, so x^k = -(m_0 + .. + m_{k-1} x^{k-1})
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for j in 0..k {
            let sub = c * modulus[j] as u64 % p;
            prod[deg - k + j] = (prod[deg - k + j] + p - sub) % p;
        }
    }
    prod.truncate(k);
    prod.iter().map(|&c| c as u32).collect()
}

fn poly_is_irreducible(f: &[u32], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    // Trial division by every monic divisor of degree 1..=k/2.
    let mut divisor = vec![0u32; k / 2 + 1];
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for m in 0..count {
            let mut x = m;
            for c in divisor.iter_mut().take(d) {
                *c = (x % p) as u32;
                x /= p;
            }
            divisor[d] = 1;
            if poly_divides(&divisor[..=d], f, p) {
                return false;
            }
        }
    }
    true
}

fn poly_divides(div: &[u32], f: &[u32], p: u64) -> bool {
    // div is monic; long division, checking for zero remainder.
    let mut rem: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let d = div.len() - 1;
    for deg in (d..rem.len()).rev() {
        let c = rem[deg];
        if c == 0 {
            continue;
        }
        rem[deg] = 0;
        for j in 0..d {
            let sub = c * div[j] as u64 % p;
            rem[deg - d + j] = (rem[deg - d + j] + p - sub) % p;
        }
    }
    rem.iter().all(|&c| c == 0)
}

/// Lexicographically smallest monic irreducible of degree `k` over `Z/p`,
/// comparing coefficient tuples from the constant term up.
fn smallest_irreducible(p: u64, k: u32) -> Vec<u32> {
    let k = k as usize;
    let count = p.pow(k as u32);
    let mut f = vec![0u32; k + 1];
    for m in 0..count {
        // c_0 is the most significant digit of m, so tuples ascend
        // lexicographically in (c_0, .., c_{k-1}).
        let mut x = m;
        for i in (0..k).rev() {
            f[i] = (x % p) as u32;
            x /= p;
        }
        f[k] = 1;
        if poly_is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducibles of every degree exist over prime fields")
}

/// The field of order `p^k`, as polynomial residues modulo the smallest
/// monic irreducible of degree `k`. Element `x` has coefficients
/// `c_i = (x / p^i) % p`, so `GF(p, 1)` indexes exactly like `Z/p`.
pub fn make_gf(p: u64, k: u32) -> Result<FiniteRing> {
    make_gf_capped(p, k, DEFAULT_ORDER_CAP)
}

pub fn make_gf_capped(p: u64, k: u32, cap: usize) -> Result<FiniteRing> {
    if !is_prime(p) {
        return Err(Error::input(format!("GF({p},{k}): {p} is not prime")));
    }
    if k == 0 {
        return Err(Error::input("GF(p,k): extension degree must be positive"));
    }
    let cap = cap.min(DEFAULT_ORDER_CAP) as u64;
    let q = p
        .checked_pow(k)
        .filter(|&q| q <= cap)
        .ok_or_else(|| Error::resource(format!("GF({p}^{k}) exceeds cap {cap}")))?;
    let q = q as usize;
    let k = k as usize;
    let modulus = smallest_irreducible(p, k as u32);

    let digits: Vec<Vec<u32>> = (0..q)
        .map(|x| {
            let mut c = vec![0u32; k];
            let mut x = x as u64;
            for ci in c.iter_mut() {
                *ci = (x % p) as u32;
                x /= p;
            }
            c
        })
        .collect();
    let index_of = |c: &[u32]| -> u32 {
        let mut x = 0u64;
        for &ci in c.iter().rev() {
            x = x * p + ci as u64;
        }
        x as u32
    };

    let mut add = vec![0u32; q * q];
    for a in 0..q {
        for b in 0..q {
            let sum: Vec<u32> = digits[a]
                .iter()
                .zip(&digits[b])
                .map(|(&x, &y)| ((x as u64 + y as u64) % p) as u32)
                .collect();
            add[a * q + b] = index_of(&sum);
        }
    }

    let mut mul = vec![0u32; q * q];
    for a in 1..q {
        for b in a..q {
            let prod = poly_mul_mod(&digits[a], &digits[b], &modulus, p);
            let idx = index_of(&prod);
            mul[a * q + b] = idx;
            mul[b * q + a] = idx;
        }
    }

    let label = if k == 1 {
        format!("GF({p})")
    } else {
        format!("GF({q})")
    };
    FiniteRing::from_tables(label, q, add, mul)
}

/// Quotient of `base[x]` by a monic modulus of degree `d >= 1`, given by its
/// coefficient list (ascending degree, as elements of `base`). Elements are
/// polynomials of degree below `d`, indexed base-`order(base)`.
pub fn make_quotient_poly(base: &FiniteRing, modulus: &[ElementId]) -> Result<FiniteRing> {
    make_quotient_poly_capped(base, modulus, DEFAULT_ORDER_CAP)
}

pub fn make_quotient_poly_capped(
    base: &FiniteRing,
    modulus: &[ElementId],
    cap: usize,
) -> Result<FiniteRing> {
    if base.order() > POLY_BASE_MAX_ORDER {
        return Err(Error::input(format!(
            "polynomial quotients take base rings of order <= {POLY_BASE_MAX_ORDER}, got {}",
            base.order()
        )));
    }
    if modulus.len() < 2 {
        return Err(Error::input("modulus must have degree at least 1"));
    }
    for &c in modulus {
        base.check_id(c)?;
    }
    let d = modulus.len() - 1;
    if modulus[d] != base.one() {
        return Err(Error::input(format!(
            "modulus must be monic over {:?}",
            base.label()
        )));
    }
    let b = base.order();
    let order = b
        .checked_pow(d as u32)
        .filter(|&o| o <= cap.min(DEFAULT_ORDER_CAP))
        .ok_or_else(|| {
            Error::resource(format!(
                "{}[x] quotient of degree {d} exceeds cap {}",
                base.label(),
                cap.min(DEFAULT_ORDER_CAP)
            ))
        })?;

    let digits: Vec<Vec<ElementId>> = (0..order)
        .map(|x| {
            let mut c = vec![base.zero(); d];
            let mut x = x;
            for ci in c.iter_mut() {
                *ci = ElementId((x % b) as u32);
                x /= b;
            }
            c
        })
        .collect();
    let index_of = |c: &[ElementId]| -> u32 {
        let mut x = 0usize;
        for ci in c.iter().rev() {
            x = x * b + ci.index();
        }
        x as u32
    };
    let neg: Vec<ElementId> = (0..b as u32).map(|a| base.neg(ElementId(a))).collect();

    let mut add = vec![0u32; order * order];
    for i in 0..order {
        for j in 0..order {
            let sum: Vec<ElementId> = digits[i]
                .iter()
                .zip(&digits[j])
                .map(|(&x, &y)| base.add(x, y))
                .collect();
            add[i * order + j] = index_of(&sum);
        }
    }

    let mut mul = vec![0u32; order * order];
    let mut prod = vec![base.zero(); 2 * d];
    for i in 0..order {
        for j in i..order {
            prod.fill(base.zero());
            for (di, &x) in digits[i].iter().enumerate() {
                if x == base.zero() {
                    continue;
                }
                for (dj, &y) in digits[j].iter().enumerate() {
                    prod[di + dj] = base.add(prod[di + dj], base.mul(x, y));
                }
            }
            for deg in (d..2 * d).rev() {
                let c = prod[deg];
                if c == base.zero() {
                    continue;
                }
                prod[deg] = base.zero();
                for (k, &mk) in modulus.iter().enumerate().take(d) {
                    let sub = base.mul(c, mk);
                    prod[deg - d + k] = base.add(prod[deg - d + k], neg[sub.index()]);
                }
            }
            let idx = index_of(&prod[..d]);
            mul[i * order + j] = idx;
            mul[j * order + i] = idx;
        }
    }

    let poly_label = pretty_poly_over(base, modulus);
    let label = format!("{}[x]/({poly_label})", base.label());
    FiniteRing::from_tables(label, order, add, mul)
}

fn pretty_poly_over(base: &FiniteRing, modulus: &[ElementId]) -> String {
    let mut terms = Vec::new();
    for (deg, &c) in modulus.iter().enumerate().rev() {
        if c == base.zero() {
            continue;
        }
        let t = match (deg, c == base.one()) {
            (0, _) => format!("{}", c.0),
            (1, true) => "x".into(),
            (1, false) => format!("{}*x", c.0),
            (_, true) => format!("x^{deg}"),
            (_, false) => format!("{}*x^{deg}", c.0),
        };
        terms.push(t);
    }
    terms.join("+")
}

/// Largest exponent accepted by `make_bool`.
pub const BOOL_MAX_EXPONENT: u32 = 12;

/// The Boolean ring on `k`-bit masks: addition is XOR, multiplication AND.
pub fn make_bool(k: u32) -> Result<FiniteRing> {
    make_bool_capped(k, DEFAULT_ORDER_CAP)
}

pub fn make_bool_capped(k: u32, cap: usize) -> Result<FiniteRing> {
    if k == 0 {
        return Err(Error::input("bool(k): exponent must be positive"));
    }
    if k > BOOL_MAX_EXPONENT {
        return Err(Error::resource(format!(
            "bool({k}) exceeds the Boolean exponent cap {BOOL_MAX_EXPONENT}"
        )));
    }
    let order = 1usize << k;
    if order > cap.min(DEFAULT_ORDER_CAP) {
        return Err(Error::resource(format!(
            "bool({k}) has order {order}, cap is {}",
            cap.min(DEFAULT_ORDER_CAP)
        )));
    }
    let mut add = vec![0u32; order * order];
    let mut mul = vec![0u32; order * order];
    for a in 0..order {
        for b in 0..order {
            add[a * order + b] = (a ^ b) as u32;
            mul[a * order + b] = (a & b) as u32;
        }
    }
    FiniteRing::from_tables(format!("bool({k})"), order, add, mul)
}

/// Componentwise ring structure on pairs, indexed `i1 * order(r2) + i2`.
pub fn ring_product(r1: &FiniteRing, r2: &FiniteRing) -> Result<FiniteRing> {
    ring_product_capped(r1, r2, DEFAULT_ORDER_CAP)
}

pub fn ring_product_capped(r1: &FiniteRing, r2: &FiniteRing, cap: usize) -> Result<FiniteRing> {
    let order = r1.order() * r2.order();
    if order > cap.min(DEFAULT_ORDER_CAP) {
        return Err(Error::resource(format!(
            "product of {} and {} has order {order}, cap is {}",
            r1.label(),
            r2.label(),
            cap.min(DEFAULT_ORDER_CAP)
        )));
    }
    let (n1, n2) = (r1.order(), r2.order());
    let mut add = vec![0u32; order * order];
    let mut mul = vec![0u32; order * order];
    for a1 in 0..n1 {
        for a2 in 0..n2 {
            let a = a1 * n2 + a2;
            for b1 in 0..n1 {
                for b2 in 0..n2 {
                    let b = b1 * n2 + b2;
                    let s1 = r1.add[a1 * n1 + b1] as usize;
                    let s2 = r2.add[a2 * n2 + b2] as usize;
                    add[a * order + b] = (s1 * n2 + s2) as u32;
                    let p1 = r1.mul[a1 * n1 + b1] as usize;
                    let p2 = r2.mul[a2 * n2 + b2] as usize;
                    mul[a * order + b] = (p1 * n2 + p2) as u32;
                }
            }
        }
    }
    FiniteRing::from_tables(format!("{} x {}", r1.label(), r2.label()), order, add, mul)
}

/// Backtracking ring isomorphism test for orders up to 16 (test support).
pub fn are_isomorphic_rings(r: &FiniteRing, t: &FiniteRing) -> Result<bool> {
    const MAX: usize = 16;
    if r.order() > MAX || t.order() > MAX {
        return Err(Error::resource(format!(
            "ring isomorphism search handles order <= {MAX}, got {} and {}",
            r.order(),
            t.order()
        )));
    }
    if r.order() != t.order() {
        return Ok(false);
    }
    let n = r.order();
    let profile = |g: &FiniteRing, a: ElementId| -> (usize, bool, bool, bool, bool) {
        let units = g.units();
        let mut nilpotent = false;
        let mut x = a;
        for _ in 0..g.order() {
            x = g.mul(x, a);
            if x == g.zero() {
                nilpotent = true;
                break;
            }
        }
        (
            g.additive_order(a),
            units.contains(a),
            g.mul(a, a) == a,
            nilpotent,
            a == g.one(),
        )
    };
    let fr: Vec<_> = (0..n).map(|i| profile(r, ElementId(i as u32))).collect();
    let ft: Vec<_> = (0..n).map(|i| profile(t, ElementId(i as u32))).collect();
    {
        let mut a = fr.clone();
        let mut b = ft.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(false);
        }
    }
    fn full_check(r: &FiniteRing, t: &FiniteRing, map: &[ElementId]) -> bool {
        for a in 0..r.order() {
            for b in a..r.order() {
                let (ai, bi) = (ElementId(a as u32), ElementId(b as u32));
                if map[r.add(ai, bi).index()] != t.add(map[a], map[b]) {
                    return false;
                }
                if map[r.mul(ai, bi).index()] != t.mul(map[a], map[b]) {
                    return false;
                }
            }
        }
        true
    }
    fn extend(
        r: &FiniteRing,
        t: &FiniteRing,
        fr: &[(usize, bool, bool, bool, bool)],
        ft: &[(usize, bool, bool, bool, bool)],
        map: &mut Vec<Option<ElementId>>,
        used: &mut Vec<bool>,
        next: usize,
    ) -> bool {
        if next == r.order() {
            let complete: Vec<ElementId> = map.iter().map(|m| m.unwrap()).collect();
            return full_check(r, t, &complete);
        }
        let a = ElementId(next as u32);
        'cand: for c in 0..t.order() {
            if used[c] || fr[next] != ft[c] {
                continue;
            }
            let img = ElementId(c as u32);
            for b in 0..=next {
                let bi = ElementId(b as u32);
                let b_img = if b == next { img } else { map[b].unwrap() };
                for (p, q) in [
                    (r.add(a, bi), t.add(img, b_img)),
                    (r.mul(a, bi), t.mul(img, b_img)),
                ] {
                    match map[p.index()] {
                        Some(pi) if pi != q => continue 'cand,
                        Some(_) => {}
                        None => {
                            if p.index() == next && img != q {
                                continue 'cand;
                            }
                            if p.index() != next && used[q.index()] {
                                continue 'cand;
                            }
                        }
                    }
                }
            }
            map[next] = Some(img);
            used[c] = true;
            if extend(r, t, fr, ft, map, used, next + 1) {
                return true;
            }
            map[next] = None;
            used[c] = false;
        }
        false
    }
    let mut map = vec![None; n];
    let mut used = vec![false; n];
    // zero and one are structural, so pin them first through the profile,
    // which marks `one`; zero is the unique element of additive order 1.
    Ok(extend(r, t, &fr, &ft, &mut map, &mut used, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(i: u32) -> ElementId {
        ElementId(i)
    }

    #[test]
    fn zero_ring_exists() {
        let r = make_zmod(1).unwrap();
        assert_eq!(r.order(), 1);
        assert_eq!(r.zero(), r.one());
    }

    #[test]
    fn zmod_arithmetic() {
        let r = make_zmod(4).unwrap();
        assert_eq!(r.mul(id(2), id(2)), id(0));
        assert_eq!(r.add(id(3), id(2)), id(1));
        assert_eq!(r.neg(id(1)), id(3));
        assert_eq!(r.characteristic(), 4);
        assert!(matches!(make_zmod(0), Err(Error::Input(_))));
        assert!(matches!(make_zmod(5000), Err(Error::Resource(_))));
    }

    #[test]
    fn units_of_modular_rings() {
        assert_eq!(make_zmod(6).unwrap().units().to_vec(), vec![id(1), id(5)]);
        assert_eq!(
            make_zmod(12).unwrap().units().to_vec(),
            vec![id(1), id(5), id(7), id(11)]
        );
        // In a field every nonzero element is a unit.
        assert_eq!(make_zmod(7).unwrap().units().len(), 6);
    }

    #[test]
    fn prime_power_factoring() {
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn gf_matches_prime_field() {
        let a = make_gf(5, 1).unwrap();
        let b = make_zmod(5).unwrap();
        for x in 0..5u32 {
            for y in 0..5u32 {
                assert_eq!(a.add(id(x), id(y)), b.add(id(x), id(y)));
                assert_eq!(a.mul(id(x), id(y)), b.mul(id(x), id(y)));
            }
        }
    }

    #[test]
    fn gf4_uses_smallest_irreducible() {
        // Modulo x^2+x+1: x * x = x + 1, i.e. index 2 squares to index 3.
        let f = make_gf(2, 2).unwrap();
        assert_eq!(f.mul(id(2), id(2)), id(3));
        assert_eq!(f.units().len(), 3);
        let idem = f.mult_semigroup().idempotent_set();
        assert_eq!(idem.to_vec(), vec![id(0), id(1)]);
    }

    #[test]
    fn gf9_uses_x_squared_plus_one() {
        // x^2+1 is the smallest monic irreducible over Z/3, so x^2 = 2.
        let f = make_gf(3, 2).unwrap();
        assert_eq!(f.mul(id(3), id(3)), id(2));
        assert_eq!(f.characteristic(), 3);
        assert_eq!(f.units().len(), 8);
    }

    #[test]
    fn gf_rejects_bad_parameters() {
        assert!(matches!(make_gf(4, 1), Err(Error::Input(_))));
        assert!(matches!(make_gf(1, 3), Err(Error::Input(_))));
        assert!(matches!(make_gf(2, 0), Err(Error::Input(_))));
        assert!(matches!(make_gf(2, 13), Err(Error::Resource(_))));
    }

    #[test]
    fn nilpotent_quotient_ring() {
        let z2 = make_zmod(2).unwrap();
        // Z/2[x]/(x^2): x has index 2 and squares to zero.
        let r = make_quotient_poly(&z2, &[id(0), id(0), id(1)]).unwrap();
        assert_eq!(r.order(), 4);
        assert_eq!(r.mul(id(2), id(2)), id(0));
        assert_eq!(r.label(), "Z/2[x]/(x^2)");
    }

    #[test]
    fn field_quotient_is_gf4() {
        let z2 = make_zmod(2).unwrap();
        let r = make_quotient_poly(&z2, &[id(1), id(1), id(1)]).unwrap();
        assert!(are_isomorphic_rings(&r, &make_gf(2, 2).unwrap()).unwrap());
    }

    #[test]
    fn degree_one_quotient_collapses_to_base() {
        let z3 = make_zmod(3).unwrap();
        let r = make_quotient_poly(&z3, &[id(0), id(1)]).unwrap();
        assert!(are_isomorphic_rings(&r, &z3).unwrap());
    }

    #[test]
    fn quotient_poly_rejects_bad_moduli() {
        let z2 = make_zmod(2).unwrap();
        let z17 = make_zmod(17).unwrap();
        assert!(matches!(
            make_quotient_poly(&z2, &[id(1)]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            make_quotient_poly(&z2, &[id(1), id(0)]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            make_quotient_poly(&z17, &[id(0), id(1)]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            make_quotient_poly_capped(&z2, &[id(0), id(0), id(0), id(1)], 4),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn product_ring_is_componentwise() {
        let r = ring_product(&make_zmod(2).unwrap(), &make_zmod(3).unwrap()).unwrap();
        assert_eq!(r.order(), 6);
        // (1,2) has index 5; (1,2)+(1,2) = (0,1) with index 1.
        assert_eq!(r.add(id(5), id(5)), id(1));
        assert!(are_isomorphic_rings(&r, &make_zmod(6).unwrap()).unwrap());
        assert_eq!(r.units().len(), 2);
    }

    #[test]
    fn booleanness() {
        assert!(make_zmod(2).unwrap().is_boolean());
        let b2 = ring_product(&make_zmod(2).unwrap(), &make_zmod(2).unwrap()).unwrap();
        assert!(b2.is_boolean());
        assert!(!make_zmod(4).unwrap().is_boolean());
        assert!(!make_gf(2, 2).unwrap().is_boolean());
    }

    #[test]
    fn bool_rings_are_boolean_products_of_f2() {
        let b1 = make_bool(1).unwrap();
        assert!(are_isomorphic_rings(&b1, &make_zmod(2).unwrap()).unwrap());
        let b2 = make_bool(2).unwrap();
        assert!(b2.is_boolean());
        let pair = ring_product(&make_zmod(2).unwrap(), &make_zmod(2).unwrap()).unwrap();
        assert!(are_isomorphic_rings(&b2, &pair).unwrap());
        assert_eq!(make_bool(3).unwrap().order(), 8);
        assert!(matches!(make_bool(0), Err(Error::Input(_))));
        assert!(matches!(make_bool(13), Err(Error::Resource(_))));
    }

    #[test]
    fn from_tables_derives_identities_and_validates() {
        let n = 3;
        let mut add = vec![0u32; 9];
        let mut mul = vec![0u32; 9];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = ((a + b) % n) as u32;
                mul[a * n + b] = ((a * b) % n) as u32;
            }
        }
        let r = FiniteRing::from_tables("raw", 3, add.clone(), mul).unwrap();
        assert_eq!(r.zero(), id(0));
        assert_eq!(r.one(), id(1));

        // min(a, b) is commutative and associative with identity 2, but does
        // not distribute over addition mod 3.
        let bad_mul: Vec<u32> = (0..n)
            .flat_map(|a| (0..n).map(move |b| a.min(b) as u32))
            .collect();
        let err = FiniteRing::from_tables("bad", 3, add, bad_mul).unwrap_err();
        assert!(err.to_string().contains("distributivity"), "{err}");
    }

    #[test]
    fn int_embed_wraps_at_characteristic() {
        let r = make_zmod(6).unwrap();
        assert_eq!(r.int_embed(0), id(0));
        assert_eq!(r.int_embed(5), id(5));
        assert_eq!(r.int_embed(6), id(0));
        assert_eq!(r.int_embed(13), id(1));
    }

    #[test]
    fn ring_isomorphism_distinguishes_order_four_rings() {
        let z4 = make_zmod(4).unwrap();
        let z2 = make_zmod(2).unwrap();
        let dual = make_quotient_poly(&z2, &[id(0), id(0), id(1)]).unwrap();
        let gf4 = make_gf(2, 2).unwrap();
        let b2 = ring_product(&z2, &z2).unwrap();
        // Four pairwise non-isomorphic rings of order 4.
        let rings = [&z4, &dual, &gf4, &b2];
        for (i, a) in rings.iter().enumerate() {
            for (j, b) in rings.iter().enumerate() {
                assert_eq!(
                    are_isomorphic_rings(a, b).unwrap(),
                    i == j,
                    "{} vs {}",
                    a.label(),
                    b.label()
                );
            }
        }
    }
}
