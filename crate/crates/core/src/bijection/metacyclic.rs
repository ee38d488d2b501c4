use serde::Serialize;

use crate::arith;
use crate::construct::direct_product;
use crate::error::GroupError;
use crate::group::{Elem, FiniteGroup, Limits};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetacyclicRefusal {
    #[error("the Sylow {p}-subgroup is not cyclic")]
    NonCyclicSylow { p: u64 },
    #[error("the Fitting subgroup has no cyclic complement")]
    NoComplement,
    #[error("every admissible choice of P and Q generates a cyclic QP")]
    CyclicQp,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The map `a^i u^j b^r v^s ↦ (a^i b^r, u^j v^s)` from
/// `G = (⟨a⟩ × P) ⋊ (⟨b⟩ × Q)` onto `C_{n/|QP|} × QP`, where
/// `Fit(G) = ⟨a⟩ × P` with `P = ⟨u⟩` and `Q = ⟨v⟩` a Sylow subgroup of the
/// complement.
#[derive(Debug, Clone, Serialize)]
pub struct MetacyclicBijection {
    pub p: u64,
    pub q: u64,
    pub target_label: String,
    #[serde(skip)]
    pub target: FiniteGroup,
    /// `image[x] = f(x)` as an index of `target`.
    pub image: Vec<Elem>,
    pub bijective: bool,
    /// Elements with `o(x) ∤ o(f(x))`.
    pub divisibility_failures: Vec<Elem>,
}

impl MetacyclicBijection {
    pub fn is_valid(&self) -> bool {
        self.bijective && self.divisibility_failures.is_empty()
    }
}

struct Decomposition {
    p: u64,
    q: u64,
    /// Generators of `⟨a⟩`, `P`, `⟨b⟩`, `Q`.
    a: Elem,
    u: Elem,
    b: Elem,
    v: Elem,
    complement: Vec<Elem>,
}

fn decompose(g: &FiniteGroup) -> Result<Decomposition, MetacyclicRefusal> {
    let n = g.order() as u64;
    for p in arith::prime_divisors(n) {
        if !g.sylow(p)?.is_cyclic {
            return Err(MetacyclicRefusal::NonCyclicSylow { p });
        }
    }
    let fit = g.fitting_subgroup();
    let f_order = fit.order() as u64;
    let f_gen = *fit
        .elements()
        .iter()
        .find(|&&x| g.order_of(x) == f_order)
        .expect("all Sylow subgroups cyclic, so Fit(G) is cyclic");
    let k = n / f_order;
    let mut found_complement = false;
    for x in g.elements().filter(|&x| g.order_of(x) == k) {
        let kx: Vec<Elem> = (0..k).map(|i| g.pow(x, i)).collect();
        if kx.iter().skip(1).any(|&y| fit.contains(y)) {
            continue;
        }
        found_complement = true;
        for q in arith::prime_divisors(k)
            .into_iter()
            .filter(|&q| !f_order.is_multiple_of(q))
        {
            let q_order = arith::p_part(k, q);
            let v = g.pow(x, k / q_order);
            for p in arith::prime_divisors(f_order) {
                let p_order = arith::p_part(f_order, p);
                let u = g.pow(f_gen, f_order / p_order);
                if g.mul(u, v) != g.mul(v, u) {
                    return Ok(Decomposition {
                        p,
                        q,
                        a: g.pow(f_gen, p_order),
                        u,
                        b: g.pow(x, q_order),
                        v,
                        complement: kx,
                    });
                }
            }
        }
    }
    Err(if found_complement {
        MetacyclicRefusal::CyclicQp
    } else {
        MetacyclicRefusal::NoComplement
    })
}

/// Builds and validates the explicit bijection for a group whose Sylow
/// subgroups are all cyclic. The choice of complement, `p` and `q` is the
/// first that works in index order.
pub fn metacyclic_bijection(
    g: &FiniteGroup,
    limits: &Limits,
) -> Result<MetacyclicBijection, MetacyclicRefusal> {
    let dec = decompose(g)?;
    let (oa, ou, ob, ov) = (
        g.order_of(dec.a),
        g.order_of(dec.u),
        g.order_of(dec.b),
        g.order_of(dec.v),
    );
    // QP as a subgroup of G, renumbered ascending in the target.
    let qp = g.generated_subgroup(&[dec.u, dec.v])?;
    let qp_group = g.induced_group(&qp, format!("C{ou}:C{ov}"));
    let cyclic_part = direct_product(
        &crate::construct::build(&crate::GroupSpec::cyclic(oa))?,
        &crate::construct::build(&crate::GroupSpec::cyclic(ob))?,
        limits,
    )?;
    let target = direct_product(&cyclic_part, &qp_group, limits)?;
    let target_label = format!("C{}x({})", oa * ob, qp_group.label());
    let c_order = (oa * ob) as usize;

    let n = g.order();
    let mut image = vec![usize::MAX; n];
    for i in 0..oa {
        let ai = g.pow(dec.a, i);
        for j in 0..ou {
            let f = g.mul(ai, g.pow(dec.u, j));
            for r in 0..ob {
                let br = g.pow(dec.b, r);
                for s in 0..ov {
                    let kappa = g.mul(br, g.pow(dec.v, s));
                    debug_assert!(dec.complement.contains(&kappa));
                    let x = g.mul(f, kappa);
                    let w = g.mul(g.pow(dec.u, j), g.pow(dec.v, s));
                    let w_idx = qp.elements().binary_search(&w).expect("u^j v^s lies in QP");
                    let c_idx = (i + oa * r) as usize;
                    image[x] = c_idx + c_order * w_idx;
                }
            }
        }
    }
    let mut hit = vec![false; n];
    let mut bijective = image.iter().all(|&y| y < n);
    if bijective {
        for &y in &image {
            bijective &= !std::mem::replace(&mut hit[y], true);
        }
    }
    let divisibility_failures = g
        .elements()
        .filter(|&x| image[x] >= n || target.order_of(image[x]) % g.order_of(x) != 0)
        .collect();
    Ok(MetacyclicBijection {
        p: dec.p,
        q: dec.q,
        target_label,
        target,
        image,
        bijective,
        divisibility_failures,
    })
}
