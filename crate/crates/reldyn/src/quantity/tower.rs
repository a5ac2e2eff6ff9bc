//! Process-global registry of the adjoined square roots.
//!
//! The field grows as a tower Q ⊂ Q(√r₀) ⊂ Q(√r₀,√r₁) ⊂ … where each
//! radicand rᵢ is an element of the field below it that is not a square
//! there. The registry is append-only: readers work on cheap snapshots,
//! and all growth happens under a single gate inside [`sqrt_repr`], so a
//! level index means the same radicand for the whole process.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::{self, Enclosure};
use super::repr::{make_ext, Repr};
use super::sign_repr;

pub(crate) struct Level {
    pub radicand: Repr,
    /// Cached enclosures of sqrt(radicand), keyed by precision bits.
    sqrt_cache: Mutex<BTreeMap<u32, Enclosure>>,
}

/// Square-class row for integer radicands: `sqrt * sqrt == value` exactly and
/// `tokens` is the class of `value` in Q*/(Q*)², in row-echelon position.
#[derive(Clone)]
struct IntRow {
    tokens: BTreeSet<BigInt>,
    value: BigInt,
    sqrt: Repr,
}

#[derive(Clone, Default)]
pub(crate) struct Tower {
    levels: Vec<Arc<Level>>,
    /// Echelon rows keyed by leading (largest) token.
    int_rows: BTreeMap<BigInt, IntRow>,
    /// Non-rational radicand levels grouped by syntactic support, used to
    /// spot radicands that differ by a rational square factor.
    by_support: BTreeMap<Vec<u32>, Vec<u32>>,
}

impl Tower {
    pub fn radicand(&self, level: u32) -> &Repr {
        &self.levels[level as usize].radicand
    }

    fn find_exact(&self, q: &Repr) -> Option<u32> {
        let key: Vec<u32> = q.support().into_iter().collect();
        let levels = self.by_support.get(&key)?;
        levels.iter().find(|&&l| self.radicand(l) == q).copied()
    }

    /// Enclosure of sqrt(radicand(level)) to the given precision.
    pub fn sqrt_enclosure(&self, level: u32, bits: u32) -> Enclosure {
        let lv = &self.levels[level as usize];
        let mut cache = lv.sqrt_cache.lock().unwrap();
        if let Some(e) = cache.get(&bits) {
            return e.clone();
        }
        let rad = interval::enclose(&lv.radicand, bits + 2, self);
        let e = rad.sqrt(bits);
        cache.insert(bits, e.clone());
        e
    }
}

fn global() -> &'static RwLock<Arc<Tower>> {
    static TOWER: OnceLock<RwLock<Arc<Tower>>> = OnceLock::new();
    TOWER.get_or_init(|| RwLock::new(Arc::new(Tower::default())))
}

pub(crate) fn snapshot() -> Arc<Tower> {
    global().read().unwrap().clone()
}

fn adjoin(tower: &mut Arc<Tower>, radicand: Repr) -> u32 {
    let mut next = (**tower).clone();
    let idx = next.levels.len() as u32;
    let key: Vec<u32> = radicand.support().into_iter().collect();
    next.by_support.entry(key).or_default().push(idx);
    next.levels.push(Arc::new(Level {
        radicand,
        sqrt_cache: Mutex::new(BTreeMap::new()),
    }));
    *tower = Arc::new(next);
    idx
}

fn publish(tower: Arc<Tower>) {
    *global().write().unwrap() = tower;
}

fn elem(level: u32) -> Repr {
    make_ext(level, Repr::zero(), Repr::one())
}

/// Exact square root of a strictly positive element. Callers handle zero and
/// the negative-radicand error; this always succeeds, growing the tower when
/// the value is not a square in the current field.
pub(crate) fn sqrt_repr(q: &Repr) -> Repr {
    static GATE: Mutex<()> = Mutex::new(());
    let _gate = GATE.lock().unwrap();
    let mut tower = snapshot();
    let result = sqrt_locked(q, &mut tower);
    publish(tower);
    result
}

fn sqrt_locked(q: &Repr, tower: &mut Arc<Tower>) -> Repr {
    match q {
        Repr::Rat(r) => sqrt_rational(r, tower),
        ext => {
            if let Some(l) = tower.find_exact(ext) {
                return elem(l);
            }
            // q = core · s² with a rational core: sqrt(q) = sqrt(core)·|s|,
            // and the integer machinery resolves the core over the
            // registered square classes.
            if let Some((core, s)) = rational_core(ext, tower) {
                let root = sqrt_rational(&core, tower);
                let s = abs_repr(s, tower);
                return root.mul(&s, tower);
            }
            // q = core · g² · r for an already-adjoined radicand r: reuse
            // that level instead of nesting a dependent one.
            let candidates: Vec<u32> = {
                let key: Vec<u32> = ext.support().into_iter().collect();
                tower.by_support.get(&key).cloned().unwrap_or_default()
            };
            for l in candidates {
                let rad_inv = tower
                    .radicand(l)
                    .inv(tower)
                    .expect("radicands are positive");
                let ratio = ext.mul(&rad_inv, tower);
                if let Some((core, g)) = rational_core(&ratio, tower) {
                    let root = sqrt_rational(&core, tower);
                    let g = abs_repr(g, tower);
                    return root.mul(&g, tower).mul(&elem(l), tower);
                }
            }
            let l = adjoin(tower, ext.clone());
            elem(l)
        }
    }
}

fn abs_repr(s: Repr, tower: &Tower) -> Repr {
    if sign_repr(&s, tower) == std::cmp::Ordering::Less {
        s.neg()
    } else {
        s
    }
}

/// Decompose a positive element as `core · s²` with a positive rational
/// core, searching only the subfield spanned by the element's own levels.
/// For q = a + b√R (b ≠ 0) the conjugate norm a² − b²R must be a perfect
/// square u² in the subfield, (a ± u)/2 = core·x² recursively, and
/// y = b / (2·core·x); the final multiplication re-verifies the identity.
fn rational_core(q: &Repr, tower: &Tower) -> Option<(BigRational, Repr)> {
    match q {
        Repr::Rat(v) => {
            if !v.is_positive() {
                return None;
            }
            let m = v.numer() * v.denom();
            let (s, rest, _) = square_decompose(&m);
            // v = rest · (s / denom)²
            Some((
                BigRational::from_integer(rest),
                Repr::Rat(BigRational::new(s, v.denom().clone())),
            ))
        }
        Repr::Ext { level, a, b } => {
            let rad = tower.radicand(*level);
            let disc = a.square(tower).sub(&b.square(tower).mul(rad, tower));
            if sign_repr(&disc, tower) == std::cmp::Ordering::Less {
                return None;
            }
            // the norm of core·s² is a perfect square in the subfield
            let (disc_core, u) = rational_core(&disc, tower)?;
            if !disc_core.is_one() {
                return None;
            }
            let half = Repr::ratio(1, 2);
            for uu in [u.clone(), u.neg()] {
                let z = a.add(&uu).mul(&half, tower);
                if z.is_zero() || sign_repr(&z, tower) == std::cmp::Ordering::Less {
                    continue;
                }
                if let Some((core, x)) = rational_core(&z, tower) {
                    if x.is_zero() {
                        continue;
                    }
                    let scale = Repr::Rat(&core * BigRational::from_integer(2.into()));
                    let denom = scale.mul(&x, tower);
                    let y = match denom.inv(tower) {
                        Some(inv) => b.mul(&inv, tower),
                        None => continue,
                    };
                    let s = make_ext(*level, x, y);
                    let rebuilt = Repr::Rat(core.clone()).mul(&s.square(tower), tower);
                    if rebuilt == *q {
                        return Some((core, s));
                    }
                }
            }
            None
        }
    }
}

/// sqrt of a positive rational: reduce to an integer radicand via
/// sqrt(n/d) = sqrt(n·d)/d, pull out the square part, then express the
/// square-free remainder over the registered integer radicands.
fn sqrt_rational(r: &BigRational, tower: &mut Arc<Tower>) -> Repr {
    let m = r.numer() * r.denom();
    let (s, rest, tokens) = square_decompose(&m);
    let scale = Repr::Rat(BigRational::new(s, r.denom().clone()));
    if rest.is_one() {
        return scale;
    }
    let root = sqrt_squarefree_int(rest, tokens, tower);
    scale.mul(&root, tower)
}

fn sqrt_squarefree_int(m: BigInt, tokens: BTreeSet<BigInt>, tower: &mut Arc<Tower>) -> Repr {
    // Gaussian elimination over GF(2) on square classes.
    let mut vec = tokens;
    let mut used: Vec<IntRow> = Vec::new();
    while let Some(lead) = vec.iter().next_back().cloned() {
        match tower.int_rows.get(&lead) {
            Some(row) => {
                let row = row.clone();
                for t in &row.tokens {
                    if !vec.remove(t) {
                        vec.insert(t.clone());
                    }
                }
                used.push(row);
            }
            None => break,
        }
    }
    let mut product = m.clone();
    for row in &used {
        product *= &row.value;
    }
    let mut denom = Repr::one();
    for row in &used {
        denom = denom.mul(&row.sqrt, tower);
    }
    if vec.is_empty() {
        // m · Π valueᵢ is a perfect square s², so sqrt(m) = s / Π sqrtᵢ.
        let s = product.sqrt();
        debug_assert_eq!(&s * &s, product);
        let denom_inv = denom.inv(tower).expect("product of square roots is nonzero");
        return Repr::Rat(BigRational::from_integer(s)).mul(&denom_inv, tower);
    }
    // Residual class: register a new level for its square-free value.
    let (sq, residue, residue_tokens) = square_decompose(&product);
    debug_assert_eq!(residue_tokens, vec);
    let level = adjoin(tower, Repr::Rat(BigRational::from_integer(residue.clone())));
    let root = elem(level);
    {
        let mut next = (**tower).clone();
        let lead = vec.iter().next_back().cloned().unwrap();
        next.int_rows.insert(
            lead,
            IntRow {
                tokens: vec,
                value: residue,
                sqrt: root.clone(),
            },
        );
        *tower = Arc::new(next);
    }
    let denom_inv = denom.inv(tower).expect("product of square roots is nonzero");
    Repr::Rat(BigRational::from_integer(sq))
        .mul(&root, tower)
        .mul(&denom_inv, tower)
}

/// Split a positive integer as s²·rest with rest square-free as far as trial
/// division can tell. Tokens are the odd-exponent primes plus one opaque
/// cofactor when the unfactored remainder is not itself a perfect square.
fn square_decompose(m: &BigInt) -> (BigInt, BigInt, BTreeSet<BigInt>) {
    debug_assert!(m.is_positive());
    let mut s = BigInt::one();
    let mut rest = BigInt::one();
    let mut tokens = BTreeSet::new();
    let mut mm = m.clone();
    for &p in small_primes() {
        let pb = BigInt::from(p);
        if &pb * &pb > mm {
            break;
        }
        let mut e = 0u32;
        loop {
            let (d, r) = mm.div_rem(&pb);
            if r.is_zero() {
                mm = d;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            s *= pb.pow(e / 2);
            if e % 2 == 1 {
                rest *= &pb;
                tokens.insert(pb);
            }
        }
    }
    if !mm.is_one() {
        let c = mm.sqrt();
        if &c * &c == mm {
            s *= c;
        } else {
            rest *= &mm;
            tokens.insert(mm);
        }
    }
    (s, rest, tokens)
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = 10_000usize;
        let mut sieve = vec![true; limit + 1];
        let mut out = Vec::new();
        for p in 2..=limit {
            if sieve[p] {
                out.push(p as u64);
                let mut q = p * p;
                while q <= limit {
                    sieve[q] = false;
                    q += p;
                }
            }
        }
        out
    })
}

impl std::fmt::Debug for Tower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tower({} levels)", self.levels.len())
    }
}
