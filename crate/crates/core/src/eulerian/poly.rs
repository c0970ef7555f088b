//! The signed Eulerian count as a single polynomial coefficient.
//!
//! Expanding `prod over arcs t->h of (x_t - x_h)` and keeping only the monomial
//! `prod_v x_v^{outdeg(v)}` selects exactly the arc sets `S` (those whose head
//! was taken) that are balanced at every vertex, each with sign `(-1)^|S|`. The
//! coefficient is therefore `even - odd` with no sign ambiguity.
//!
//! Exponents are capped at the target outdegree, and a vertex whose remaining
//! arcs can no longer reach its target is dropped, so only vertices with
//! arcs on both sides of the current position carry state.

use std::collections::HashMap;
use std::hash::BuildHasherDefault;
use std::ops::{AddAssign, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

type FastMap<K, V> = HashMap<K, V, BuildHasherDefault<KeyHasher>>;

/// Keys are already well-mixed bit fields; fold them instead of running SipHash.
#[derive(Default)]
struct KeyHasher(u64);

impl std::hash::Hasher for KeyHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(8) ^ b as u64).wrapping_mul(0x100000001b3);
        }
    }
    fn write_u128(&mut self, v: u128) {
        let x = (v as u64) ^ ((v >> 64) as u64).rotate_left(29);
        self.0 = x.wrapping_mul(0x9e3779b97f4a7c15) ^ (x >> 31);
    }
}

/// Static packing of per-vertex exponents into a `u128`. Vertices whose arc
/// intervals do not overlap share a slot.
pub(crate) struct Layout {
    slot_of: Vec<usize>,
    width: u32,
    first: Vec<usize>,
    last: Vec<usize>,
    /// Upper bound on the number of live monomials at any step.
    pub peak_states: u128,
}

impl Layout {
    pub(crate) fn new(n: usize, arcs: &[(usize, usize)], target: &[usize]) -> Result<Self> {
        let mut first = vec![usize::MAX; n];
        let mut last = vec![0; n];
        for (i, &(t, h)) in arcs.iter().enumerate() {
            for v in [t, h] {
                first[v] = first[v].min(i);
                last[v] = i;
            }
        }
        let width = 32 - (target.iter().copied().max().unwrap_or(0) as u32).leading_zeros();
        let width = width.max(1);
        // Greedy interval colouring in arc order.
        let mut slot_of = vec![usize::MAX; n];
        let mut free: Vec<usize> = Vec::new();
        let mut slots = 0usize;
        let mut live_product: u128 = 1;
        let mut peak: u128 = 1;
        for (i, &(t, h)) in arcs.iter().enumerate() {
            for v in [t, h] {
                if first[v] == i && slot_of[v] == usize::MAX {
                    slot_of[v] = free.pop().unwrap_or_else(|| {
                        slots += 1;
                        slots - 1
                    });
                    live_product = live_product.saturating_mul(target[v] as u128 + 1);
                }
            }
            peak = peak.max(live_product);
            for v in [t, h] {
                if last[v] == i && slot_of[v] != usize::MAX && !free.contains(&slot_of[v]) {
                    free.push(slot_of[v]);
                    live_product /= target[v] as u128 + 1;
                }
            }
            // reuse only after both endpoints are processed
            free.sort_unstable_by(|a, b| b.cmp(a));
        }
        if slots as u32 * width > 128 {
            return Err(Error::Capacity {
                what: "coefficient engine key bits",
                actual: slots as u128 * width as u128,
                limit: 128,
                hint: "",
            });
        }
        Ok(Layout {
            slot_of,
            width,
            first,
            last,
            peak_states: peak,
        })
    }

    #[inline]
    fn get(&self, key: u128, v: usize) -> usize {
        let shift = self.slot_of[v] as u32 * self.width;
        ((key >> shift) & ((1u128 << self.width) - 1)) as usize
    }

    #[inline]
    fn set(&self, key: u128, v: usize, value: usize) -> u128 {
        let shift = self.slot_of[v] as u32 * self.width;
        let mask = ((1u128 << self.width) - 1) << shift;
        (key & !mask) | ((value as u128) << shift)
    }
}

/// Coefficient of `prod_v x_v^{outdeg(v)}` in `prod (x_tail - x_head)`, i.e. the
/// signed Eulerian count, refusing instances whose state bound exceeds `budget`.
pub(crate) fn signed_eulerian_count(
    n: usize,
    arcs: &[(usize, usize)],
    budget: u128,
) -> Result<BigInt> {
    let mut target = vec![0usize; n];
    for &(t, _) in arcs {
        target[t] += 1;
    }
    let layout = Layout::new(n, arcs, &target)?;
    if layout.peak_states > budget {
        return Err(Error::Capacity {
            what: "coefficient engine state bound",
            actual: layout.peak_states,
            limit: budget,
            hint: "",
        });
    }
    // Intermediate coefficients after k arcs are bounded by 2^k.
    if arcs.len() < 126 {
        Ok(BigInt::from(run::<i128>(arcs, &target, &layout)))
    } else {
        Ok(run::<BigInt>(arcs, &target, &layout))
    }
}

fn run<C>(arcs: &[(usize, usize)], target: &[usize], layout: &Layout) -> C
where
    C: Clone + Zero + One + for<'a> AddAssign<&'a C> + for<'a> SubAssign<&'a C>,
{
    let mut states: FastMap<u128, C> = FastMap::default();
    states.insert(0, C::one());
    // Incident arcs of v not yet processed, after processing arc i.
    let mut remaining = vec![0usize; target.len()];
    for &(t, h) in arcs {
        remaining[t] += 1;
        remaining[h] += 1;
    }
    for (i, &(t, h)) in arcs.iter().enumerate() {
        remaining[t] -= 1;
        remaining[h] -= 1;
        let mut next: FastMap<u128, C> =
            FastMap::with_capacity_and_hasher(states.len() * 2, Default::default());
        let viable = |key: u128| {
            [t, h].into_iter().all(|v| {
                let e = layout.get(key, v);
                e <= target[v] && e + remaining[v] >= target[v]
            })
        };
        let finish = |mut key: u128| {
            for v in [t, h] {
                if layout.last[v] == i {
                    key = layout.set(key, v, 0);
                }
            }
            key
        };
        debug_assert!(layout.first[t] <= i && layout.first[h] <= i);
        for (key, c) in states {
            let et = layout.get(key, t);
            if et < target[t] {
                let k = layout.set(key, t, et + 1);
                if viable(k) {
                    let slot = next.entry(finish(k)).or_insert_with(C::zero);
                    *slot += &c;
                }
            }
            let eh = layout.get(key, h);
            if eh < target[h] {
                let k = layout.set(key, h, eh + 1);
                if viable(k) {
                    let slot = next.entry(finish(k)).or_insert_with(C::zero);
                    *slot -= &c;
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        states = next;
        if states.is_empty() {
            return C::zero();
        }
    }
    states.remove(&0).unwrap_or_else(C::zero)
}
