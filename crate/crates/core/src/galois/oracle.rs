//! Brute-force enumeration of PSL(2, q) acting on the projective line:
//! every determinant-1 matrix is listed, scalars collapse because equal
//! permutations are deduplicated, and cycle types are counted exactly.

use std::collections::{BTreeMap, HashSet};

use crate::algebra::field::FieldCtx;
use crate::error::{Error, Result};
use crate::galois::CycleType;

/// The achievable cycle types of PSL(2, q) on the q+1 points of P^1 with
/// exact element counts.
#[derive(Debug, Clone)]
pub struct GroupOracle {
    pub label: String,
    pub degree: usize,
    pub order: u64,
    pub cycle_counts: BTreeMap<CycleType, u64>,
}

impl GroupOracle {
    pub fn contains(&self, t: &CycleType) -> bool {
        self.cycle_counts.contains_key(t)
    }

    /// Expected Chebotarev frequency of a cycle type.
    pub fn frequency(&self, t: &CycleType) -> f64 {
        self.cycle_counts.get(t).map_or(0.0, |&c| c as f64 / self.order as f64)
    }
}

/// PSL(2, q): determinant-1 matrices modulo scalars.
pub fn psl_oracle(q_inner: u64) -> Result<GroupOracle> {
    mobius_oracle(q_inner, false)
}

/// PGL(2, q): all invertible matrices modulo scalars. Used only for
/// diagnostics when a sample escapes the PSL types.
pub fn pgl_oracle(q_inner: u64) -> Result<GroupOracle> {
    mobius_oracle(q_inner, true)
}

fn mobius_oracle(q_inner: u64, any_det: bool) -> Result<GroupOracle> {
    if q_inner > 25 {
        return Err(Error::Oversize(format!(
            "PSL(2, {q_inner}) enumeration capped at q = 25"
        )));
    }
    let ctx = FieldCtx::from_q(q_inner)?;
    let q = ctx.q();
    let npts = (q + 1) as usize;
    // points: index i < q is the field element with that index, q is infinity
    let elems: Vec<_> = ctx.elements().collect();
    let mut perms: HashSet<Vec<u8>> = HashSet::new();
    // all (a, b, c, d) with ad - bc = 1 (or merely nonzero for PGL)
    for ai in 0..q {
        for bi in 0..q {
            for ci in 0..q {
                for di in 0..q {
                    let (a, b) = (&elems[ai as usize], &elems[bi as usize]);
                    let (c, d) = (&elems[ci as usize], &elems[di as usize]);
                    let det = a.mul(d).sub(&b.mul(c));
                    if det.is_zero() || (!any_det && !det.is_one()) {
                        continue;
                    }
                    let mut perm = vec![0u8; npts];
                    // finite z -> (az+b)/(cz+d); infinity -> a/c
                    for (zi, z) in elems.iter().enumerate() {
                        let den = c.mul(z).add(d);
                        if den.is_zero() {
                            perm[zi] = q as u8; // maps to infinity
                        } else {
                            let num = a.mul(z).add(b);
                            perm[zi] = num.mul(&den.inv().unwrap()).index() as u8;
                        }
                    }
                    perm[q as usize] = if c.is_zero() {
                        q as u8
                    } else {
                        a.mul(&c.inv().unwrap()).index() as u8
                    };
                    perms.insert(perm);
                }
            }
        }
    }
    let order = perms.len() as u64;
    let mut cycle_counts: BTreeMap<CycleType, u64> = BTreeMap::new();
    for perm in &perms {
        *cycle_counts.entry(cycle_type_of_perm(perm)).or_insert(0) += 1;
    }
    let name = if any_det { "PGL" } else { "PSL" };
    Ok(GroupOracle {
        label: format!("{name}(2,{q_inner}) on {npts} points"),
        degree: npts,
        order,
        cycle_counts,
    })
}

fn cycle_type_of_perm(perm: &[u8]) -> CycleType {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = perm[cur] as usize;
            len += 1;
        }
        parts.push(len);
    }
    CycleType::new(parts)
}
