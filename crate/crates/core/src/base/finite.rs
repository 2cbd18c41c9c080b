//! Finite fields F_{p^d} presented as F_p[s]/(m(s)), polynomial
//! factorization over them (distinct-degree plus equal-degree splitting,
//! with trace maps in characteristic 2), irreducibility tests, and flattening
//! of one-step extensions F_q[T]/(psi) back to this presentation via a
//! primitive element.

use super::field::Field;
use super::poly::Poly;
use super::rng::SplitMix64;
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::One;

// ---------- F_p scalar arithmetic ----------

fn fp_add(p: u64, a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn fp_sub(p: u64, a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn fp_mul(p: u64, a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn fp_pow(p: u64, mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_mul(p, acc, a);
        }
        a = fp_mul(p, a, a);
        e >>= 1;
    }
    acc
}

fn fp_inv(p: u64, a: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod p");
    fp_pow(p, a % p, p - 2)
}

/// Gaussian elimination mod p; returns the inverse matrix if invertible.
pub fn fp_mat_inv(p: u64, m: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|row| {
            let mut r: Vec<u64> = row.iter().map(|&x| x % p).collect();
            r.resize(n, 0);
            r
        })
        .collect();
    let mut inv: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    for c in 0..n {
        let pr = (c..n).find(|&i| a[i][c] != 0)?;
        a.swap(c, pr);
        inv.swap(c, pr);
        let piv = fp_inv(p, a[c][c]);
        for j in 0..n {
            a[c][j] = fp_mul(p, a[c][j], piv);
            inv[c][j] = fp_mul(p, inv[c][j], piv);
        }
        for i in 0..n {
            if i != c && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..n {
                    let t = fp_mul(p, f, a[c][j]);
                    a[i][j] = fp_sub(p, a[i][j], t);
                    let t2 = fp_mul(p, f, inv[c][j]);
                    inv[i][j] = fp_sub(p, inv[i][j], t2);
                }
            }
        }
    }
    Some(inv)
}

fn fp_matvec(p: u64, m: &[Vec<u64>], x: &[u64]) -> Vec<u64> {
    m.iter()
        .map(|row| {
            let mut acc = 0u64;
            for (a, b) in row.iter().zip(x) {
                acc = fp_add(p, acc, fp_mul(p, *a, *b));
            }
            acc
        })
        .collect()
}

// ---------- the field ----------

/// F_{p^d} = F_p[s]/(m(s)); elements are coefficient vectors of length d.
#[derive(Debug, Clone)]
pub struct Fq {
    pub p: u64,
    /// Monic modulus, ascending coefficients, length d+1, d >= 1.
    pub m: Vec<u64>,
}

impl Fq {
    pub fn prime(p: u64) -> Fq {
        Fq { p, m: vec![0, 1] }
    }

    pub fn deg(&self) -> usize {
        self.m.len() - 1
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.deg() as u32)
    }

    pub fn is_prime_field(&self) -> bool {
        self.deg() == 1
    }

    /// The class of the generator s (only meaningful when deg > 1).
    pub fn gen(&self) -> Vec<u64> {
        let mut v = vec![0; self.deg()];
        if self.deg() > 1 {
            v[1] = 1;
        } else {
            // In F_p the "generator" of the presentation is the class of s,
            // which the modulus s (m = [0,1]) sends to 0.
            v[0] = 0;
        }
        v
    }

    fn reduce_vec(&self, mut v: Vec<u64>) -> Vec<u64> {
        let d = self.deg();
        // Polynomial reduction mod m, using monic-ness.
        while v.len() > d {
            let k = v.len() - 1;
            let c = v[k];
            v.pop();
            if c != 0 {
                for j in 0..d {
                    let t = fp_mul(self.p, c, self.m[j]);
                    v[k - d + j] = fp_sub(self.p, v[k - d + j], t);
                }
            }
        }
        v.resize(d, 0);
        v
    }

    pub fn from_u64(&self, n: u64) -> Vec<u64> {
        let mut v = vec![0; self.deg()];
        v[0] = n % self.p;
        v
    }

    /// All field elements (small fields only; used for root enumeration).
    pub fn all_elements(&self) -> Vec<Vec<u64>> {
        let d = self.deg();
        let mut out = vec![vec![0u64; d]];
        for i in 0..d {
            let mut next = Vec::new();
            for e in &out {
                for c in 0..self.p {
                    let mut v = e.clone();
                    v[i] = c;
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }
}

impl Field for Fq {
    type El = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.deg()]
    }
    fn one(&self) -> Vec<u64> {
        self.from_u64(1)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| fp_add(self.p, x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|&x| if x == 0 { 0 } else { self.p - x }).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        if self.deg() == 1 {
            return vec![fp_mul(self.p, a[0], b[0])];
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = fp_add(self.p, prod[i + j], fp_mul(self.p, x, y));
            }
        }
        self.reduce_vec(prod)
    }
    fn inv(&self, a: &Vec<u64>) -> Vec<u64> {
        assert!(!self.is_zero(a), "inverse of zero in F_q");
        if self.deg() == 1 {
            return vec![fp_inv(self.p, a[0])];
        }
        // a^(q-2) by square-and-multiply on the BigUint exponent.
        let e = self.order() - BigUint::from(2u32);
        pow_el_big(self, a, &e)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&x| x == 0)
    }
    fn eq(&self, a: &Vec<u64>, b: &Vec<u64>) -> bool {
        a == b
    }
    fn from_i64(&self, n: i64) -> Vec<u64> {
        let r = n.rem_euclid(self.p as i64) as u64;
        self.from_u64(r)
    }
    fn fmt_el(&self, a: &Vec<u64>) -> String {
        if self.deg() == 1 {
            return format!("{}", a[0]);
        }
        let mut parts = Vec::new();
        for (k, &c) in a.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let var = match k {
                0 => String::new(),
                1 => "s".to_string(),
                _ => format!("s^{k}"),
            };
            let part = if k == 0 {
                format!("{c}")
            } else if c == 1 {
                var
            } else {
                format!("{c}*{var}")
            };
            parts.push(part);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// a^e for a BigUint exponent.
pub fn pow_el_big(f: &Fq, a: &Vec<u64>, e: &BigUint) -> Vec<u64> {
    let mut acc = f.one();
    let mut base = a.clone();
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = f.mul(&acc, &base);
        }
        base = f.mul(&base, &base);
    }
    acc
}

// ---------- polynomials over F_q: modular powering ----------

fn polymod_mul(f: &Fq, a: &Poly<Fq>, b: &Poly<Fq>, g: &Poly<Fq>) -> Poly<Fq> {
    Poly::rem(f, &Poly::mul(f, a, b), g)
}

fn polymod_pow_u64(f: &Fq, a: &Poly<Fq>, mut e: u64, g: &Poly<Fq>) -> Poly<Fq> {
    let mut acc = Poly::one(f);
    let mut base = Poly::rem(f, a, g);
    while e > 0 {
        if e & 1 == 1 {
            acc = polymod_mul(f, &acc, &base, g);
        }
        base = polymod_mul(f, &base, &base, g);
        e >>= 1;
    }
    acc
}

fn polymod_pow_big(f: &Fq, a: &Poly<Fq>, e: &BigUint, g: &Poly<Fq>) -> Poly<Fq> {
    let mut acc = Poly::one(f);
    let mut base = Poly::rem(f, a, g);
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = polymod_mul(f, &acc, &base, g);
        }
        base = polymod_mul(f, &base, &base, g);
    }
    acc
}

/// h ↦ h^q mod g, q = |F_q|, via deg-many p-th powers.
fn frob_mod(f: &Fq, h: &Poly<Fq>, g: &Poly<Fq>) -> Poly<Fq> {
    let mut out = Poly::rem(f, h, g);
    for _ in 0..f.deg() {
        out = polymod_pow_u64(f, &out, f.p, g);
    }
    out
}

// ---------- factorization ----------

/// Squarefree decomposition: f = prod g_i^i with g_i squarefree, pairwise
/// coprime, monic. Characteristic-p aware (handles f' = 0 via p-th roots).
pub fn squarefree_decomposition(f: &Fq, a: &Poly<Fq>) -> Vec<(Poly<Fq>, usize)> {
    let a = a.monic(f);
    if a.deg() <= 0 {
        return vec![];
    }
    let d = Poly::derivative(f, &a);
    if d.is_zero() {
        // a = h(T^p): take the p-th root and recurse.
        let h = pth_root_poly(f, &a);
        return squarefree_decomposition(f, &h)
            .into_iter()
            .map(|(g, m)| (g, m * f.p as usize))
            .collect();
    }
    let mut out: Vec<(Poly<Fq>, usize)> = Vec::new();
    let mut c = Poly::gcd(f, &a, &d);
    let mut w = Poly::divmod(f, &a, &c).0;
    let mut i = 1usize;
    while w.deg() > 0 {
        let y = Poly::gcd(f, &w, &c);
        let z = Poly::divmod(f, &w, &y).0;
        if z.deg() > 0 {
            out.push((z, i));
        }
        w = y;
        c = Poly::divmod(f, &c, &w).0;
        i += 1;
    }
    if c.deg() > 0 {
        // Leftover p-th power part.
        let h = pth_root_poly(f, &c);
        for (g, m) in squarefree_decomposition(f, &h) {
            merge_factor(f, &mut out, g, m * f.p as usize);
        }
    }
    out
}

fn merge_factor(f: &Fq, out: &mut Vec<(Poly<Fq>, usize)>, g: Poly<Fq>, m: usize) {
    for (h, k) in out.iter_mut() {
        if *k == m && Poly::eq(f, h, &g) {
            return;
        }
    }
    // Same multiplicity class: multiply in (parts are pairwise coprime).
    for (h, k) in out.iter_mut() {
        if *k == m {
            *h = Poly::mul(f, h, &g);
            return;
        }
    }
    out.push((g, m));
}

/// For a = h(T^p) with coefficients in F_q, return h.
fn pth_root_poly(f: &Fq, a: &Poly<Fq>) -> Poly<Fq> {
    let p = f.p as usize;
    let mut c = Vec::new();
    let mut k = 0;
    while k <= a.deg() as usize {
        let coef = a.coeff(f, k);
        // p-th root in F_q: a^(q/p).
        let e = f.order() / BigUint::from(f.p);
        c.push(pow_el_big(f, &coef, &e));
        k += p;
    }
    Poly::from_coeffs(f, c)
}

/// Distinct-degree splitting of a squarefree monic polynomial:
/// returns (product-of-degree-d-factors, d) pairs.
fn distinct_degree(f: &Fq, a: &Poly<Fq>) -> Vec<(Poly<Fq>, usize)> {
    let mut out = Vec::new();
    let mut g = a.clone();
    let mut h = Poly::x(f); // T^{q^0}
    let mut d = 0usize;
    while g.deg() > 0 {
        d += 1;
        if (g.deg() as usize) < 2 * d {
            out.push((g.clone(), g.deg() as usize));
            break;
        }
        h = frob_mod(f, &h, &g);
        let diff = Poly::sub(f, &h, &Poly::x(f));
        let gd = Poly::gcd(f, &diff, &g);
        if gd.deg() > 0 {
            out.push((gd.clone(), d));
            g = Poly::divmod(f, &g, &gd).0;
            h = Poly::rem(f, &h, &g);
        }
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus; trace maps for p = 2).
fn equal_degree(f: &Fq, a: &Poly<Fq>, d: usize, rng: &mut SplitMix64) -> Vec<Poly<Fq>> {
    if a.deg() as usize == d {
        return vec![a.monic(f)];
    }
    let q_to_d = f.order().pow(d as u32);
    loop {
        // Random polynomial of degree < deg a.
        let mut coeffs = Vec::new();
        for _ in 0..a.deg() as usize {
            let mut v = vec![0u64; f.deg()];
            for slot in v.iter_mut() {
                *slot = rng.below(f.p);
            }
            coeffs.push(v);
        }
        let h = Poly::from_coeffs(f, coeffs);
        if h.deg() < 1 && d > 0 && a.deg() > 1 && h.is_zero() {
            continue;
        }
        let w = if f.p == 2 {
            // Trace map sum_{i<k*d} h^(2^i) mod a, with q = 2^k.
            let total = f.deg() * d;
            let mut acc = Poly::rem(f, &h, a);
            let mut cur = Poly::rem(f, &h, a);
            for _ in 1..total {
                cur = polymod_mul(f, &cur, &cur, a);
                acc = Poly::add(f, &acc, &cur);
            }
            acc
        } else {
            let e = (&q_to_d - BigUint::one()) / BigUint::from(2u32);
            let pw = polymod_pow_big(f, &h, &e, a);
            Poly::sub(f, &pw, &Poly::one(f))
        };
        let g1 = Poly::gcd(f, &w, a);
        if g1.deg() > 0 && g1.deg() < a.deg() {
            let g2 = Poly::divmod(f, a, &g1).0;
            let mut out = equal_degree(f, &g1, d, rng);
            out.extend(equal_degree(f, &g2, d, rng));
            return out;
        }
    }
}

/// Canonical encoding used to order factors deterministically.
pub fn poly_key(_f: &Fq, a: &Poly<Fq>) -> (i64, Vec<Vec<u64>>) {
    (a.deg(), a.c.clone())
}

/// Full factorization over F_q: monic irreducible factors with
/// multiplicities, sorted by (degree, coefficient tuple). The input's
/// leading coefficient is discarded (callers track units).
pub fn factor(f: &Fq, a: &Poly<Fq>) -> Vec<(Poly<Fq>, usize)> {
    assert!(a.deg() >= 1, "factor() needs positive degree");
    let mut rng = SplitMix64::from_bytes(&encode_poly(f, a));
    let mut out: Vec<(Poly<Fq>, usize)> = Vec::new();
    for (part, mult) in squarefree_decomposition(f, a) {
        for (prod, d) in distinct_degree(f, &part) {
            for irr in equal_degree(f, &prod, d, &mut rng) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|x, y| poly_key(f, &x.0).cmp(&poly_key(f, &y.0)));
    out
}

fn encode_poly(f: &Fq, a: &Poly<Fq>) -> Vec<u8> {
    let mut bytes = Vec::new();
    bytes.extend_from_slice(&f.p.to_le_bytes());
    for c in &a.c {
        for &w in c {
            bytes.extend_from_slice(&w.to_le_bytes());
        }
        bytes.push(0xff);
    }
    bytes
}

pub fn is_irreducible(f: &Fq, a: &Poly<Fq>) -> bool {
    let n = a.deg();
    if n <= 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let a = a.monic(f);
    // T^{q^n} == T mod a, and gcd(T^{q^{n/r}} - T, a) = 1 for primes r | n.
    let n = n as usize;
    let mut frob_powers = Vec::with_capacity(n + 1);
    let mut cur = Poly::x(f);
    frob_powers.push(cur.clone());
    for _ in 0..n {
        cur = frob_mod(f, &cur, &a);
        frob_powers.push(cur.clone());
    }
    if !Poly::eq(f, &frob_powers[n], &Poly::x(f)) {
        return false;
    }
    let mut m = n;
    let mut primes = Vec::new();
    let mut r = 2;
    while r * r <= m {
        if m % r == 0 {
            primes.push(r);
            while m % r == 0 {
                m /= r;
            }
        }
        r += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    for r in primes {
        let diff = Poly::sub(f, &frob_powers[n / r], &Poly::x(f));
        if Poly::gcd(f, &diff, &a).deg() != 0 {
            return false;
        }
    }
    true
}

/// Roots of a polynomial in F_q (via factorization).
pub fn roots(f: &Fq, a: &Poly<Fq>) -> Vec<Vec<u64>> {
    if a.deg() < 1 {
        return vec![];
    }
    let mut out = Vec::new();
    for (g, _) in factor(f, a) {
        if g.deg() == 1 {
            // T + c ⇒ root -c
            out.push(f.neg(&g.c[0]));
        }
    }
    out
}

// ---------- flattening a one-step extension ----------

/// F_q[T]/(psi) re-presented as a single extension of F_p, with maps.
#[derive(Debug, Clone)]
pub struct FlatExt {
    pub fld: Fq,
    /// Images of the base power basis t^i, i < d_base.
    embed_basis: Vec<Vec<u64>>,
    /// Image of T (the class of psi's variable).
    pub theta: Vec<u64>,
    /// Inverse of the matrix whose columns are embed(t^i)*theta^j
    /// (column index i + j*d_base), for decomposition along theta-powers.
    decomp_inv: Vec<Vec<u64>>,
    d_base: usize,
    e_ext: usize,
}

impl FlatExt {
    pub fn embed(&self, a: &[u64]) -> Vec<u64> {
        let p = self.fld.p;
        let mut out = vec![0u64; self.fld.deg()];
        for (i, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (k, &b) in self.embed_basis[i].iter().enumerate() {
                out[k] = fp_add(p, out[k], fp_mul(p, c, b));
            }
        }
        out
    }

    /// Coordinates of x in the basis theta^0..theta^{e-1} over the base
    /// field: returns e base-field elements.
    pub fn decompose(&self, x: &[u64]) -> Vec<Vec<u64>> {
        let coords = fp_matvec(self.fld.p, &self.decomp_inv, x);
        (0..self.e_ext)
            .map(|j| (0..self.d_base).map(|i| coords[j * self.d_base + i]).collect())
            .collect()
    }
}

/// Build the flattened extension of `base` by the monic irreducible `psi`.
pub fn extend_flat(base: &Fq, psi: &Poly<Fq>) -> Result<FlatExt> {
    let d = base.deg();
    let e = psi.deg();
    if e < 2 {
        return Err(Error::internal("extend_flat needs deg(psi) >= 2"));
    }
    let e = e as usize;
    let dim = d * e;
    let p = base.p;
    let psi = psi.monic(base);

    // The algebra A = base[T]/psi; elements are Poly<Fq> of degree < e.
    let amul = |a: &Poly<Fq>, b: &Poly<Fq>| polymod_mul(base, a, b, &psi);
    let flat = |a: &Poly<Fq>| -> Vec<u64> {
        let mut v = vec![0u64; dim];
        for j in 0..e {
            let cj = a.coeff(base, j);
            for i in 0..d {
                v[j * d + i] = cj[i];
            }
        }
        v
    };

    let mut rng = SplitMix64::from_bytes(&encode_poly(base, &psi));
    let t_el = Poly::constant(base, base.gen());
    for attempt in 0..1000 {
        // Candidate gamma: T + c*t for small c, then random elements.
        let gamma: Poly<Fq> = if attempt as u64 <= p {
            let c = base.from_i64(attempt as i64);
            Poly::add(
                base,
                &Poly::x(base),
                &Poly::mul(base, &t_el, &Poly::constant(base, c)),
            )
        } else {
            let mut coeffs = Vec::new();
            for _ in 0..e {
                let mut v = vec![0u64; d];
                for slot in v.iter_mut() {
                    *slot = rng.below(p);
                }
                coeffs.push(v);
            }
            Poly::from_coeffs(base, coeffs)
        };
        // Powers gamma^0 .. gamma^dim.
        let mut powers = Vec::with_capacity(dim + 1);
        let mut cur = Poly::one(base);
        for _ in 0..=dim {
            powers.push(cur.clone());
            cur = amul(&cur, &gamma);
        }
        let vecs: Vec<Vec<u64>> = powers.iter().map(&flat).collect();
        // P: columns gamma^k, k < dim. Invertible iff gamma is primitive.
        let pmat: Vec<Vec<u64>> = (0..dim)
            .map(|row| (0..dim).map(|k| vecs[k][row]).collect())
            .collect();
        let Some(pinv) = fp_mat_inv(p, &pmat) else {
            continue;
        };
        // Minimal polynomial: gamma^dim = sum c_k gamma^k.
        let coords = fp_matvec(p, &pinv, &vecs[dim]);
        let mut modulus = vec![0u64; dim + 1];
        for (k, &c) in coords.iter().enumerate() {
            modulus[k] = if c == 0 { 0 } else { p - c };
        }
        modulus[dim] = 1;
        let fld = Fq { p, m: modulus };
        let iso = |a: &Poly<Fq>| -> Vec<u64> { fp_matvec(p, &pinv, &flat(a)) };
        let embed_basis: Vec<Vec<u64>> = (0..d)
            .map(|i| {
                let mut t_pow = vec![0u64; d];
                t_pow[i] = 1;
                iso(&Poly::constant(base, t_pow))
            })
            .collect();
        let theta = iso(&Poly::x(base));
        // Decomposition matrix: columns embed(t^i)*theta^j.
        let partial = FlatExt {
            fld: fld.clone(),
            embed_basis: embed_basis.clone(),
            theta: theta.clone(),
            decomp_inv: vec![],
            d_base: d,
            e_ext: e,
        };
        let mut cols = Vec::with_capacity(dim);
        let mut theta_pow = fld.one();
        for _j in 0..e {
            for i in 0..d {
                let mut t_pow = vec![0u64; d];
                t_pow[i] = 1;
                cols.push(fld.mul(&partial.embed(&t_pow), &theta_pow));
            }
            theta_pow = fld.mul(&theta_pow, &theta);
        }
        let bmat: Vec<Vec<u64>> = (0..dim)
            .map(|row| (0..dim).map(|k| cols[k][row]).collect())
            .collect();
        let Some(binv) = fp_mat_inv(p, &bmat) else {
            return Err(Error::internal(
                "theta-power basis degenerate in flattened extension",
            ));
        };
        return Ok(FlatExt {
            fld,
            embed_basis,
            theta,
            decomp_inv: binv,
            d_base: d,
            e_ext: e,
        });
    }
    Err(Error::internal("no primitive element found for extension"))
}
