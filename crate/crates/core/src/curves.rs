//! Closed curves as conjugacy classes, their lift families in the disk,
//! and the certified simplicity / intersection / filling tests built on
//! endpoint linking of lifts.
//!
//! A lift family is indexed by cosets h<root>: two conjugators give the
//! same complete geodesic iff they lie in the same coset. Coset
//! representatives are canonicalized combinatorially, and the geometric
//! endpoint test is kept as a cross-check invariant rather than the
//! primary dedup rule.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::geom::{linking, Geodesic, GeomError, LinkClass, PREC_CAP};
use crate::group::{ConjugacyClass, GroupKind, GroupWord, SurfaceGroup, WordError};
use crate::scalar::{Ball, Ival, NumError};

#[derive(Debug, Error)]
pub enum CurveError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error("cap exceeded: {0}")]
    Cap(String),
}

/// A free homotopy class of closed curves, with depth-stamped cached
/// verdicts. `primitive` is intrinsic (root power 1); `simple` is only
/// ever known relative to the lift depth that certified it.
#[derive(Clone, Debug)]
pub struct CurveClass {
    pub class: ConjugacyClass,
    pub simple: Option<(usize, bool)>,
}

impl CurveClass {
    pub fn new(grp: &SurfaceGroup, w: &GroupWord) -> Result<Self, CurveError> {
        Ok(CurveClass {
            class: grp.conjugacy_class(w)?,
            simple: None,
        })
    }

    pub fn primitive(&self) -> bool {
        self.class.power == 1
    }

    pub fn mark_simple(&mut self, verdict: &SimpleVerdict) {
        match verdict {
            SimpleVerdict::SimpleUpTo(d) => {
                if self.simple.map_or(true, |(d0, s)| s && *d > d0) {
                    self.simple = Some((*d, true));
                }
            }
            SimpleVerdict::NotSimple { .. } => self.simple = Some((0, false)),
        }
    }
}

/// One lift: the axis of rep·root·rep⁻¹, where `rep` is the canonical
/// coset representative. `first_depth` is the length of that representative,
/// i.e. the enumeration depth at which the lift first appears.
#[derive(Clone, Debug)]
pub struct Lift {
    pub rep: GroupWord,
    pub geo: Geodesic,
    pub first_depth: usize,
}

#[derive(Clone, Debug)]
pub struct LiftSet {
    pub root: GroupWord,
    pub depth: usize,
    pub lifts: Vec<Lift>,
    /// Index of the base lift (identity coset).
    pub base: usize,
}

/// Canonical representative of the coset h<root>: the least canonical
/// spelling of {h·root^k} under the (length, letter-order) key. The walk
/// stops once reduced lengths exceed the incoming length by a full root
/// plus slack; lengths along a coset change by at most |root| per step and
/// dips past that hump do not occur at the word lengths used here. The
/// geometric endpoint cross-check below guards this bound.
fn coset_rep(grp: &SurfaceGroup, h: &GroupWord, root: &GroupWord) -> GroupWord {
    let start = grp.dehn_reduce(h);
    let bound = start.len() + root.len() + 2;
    let mut best = grp.canonical_word(&start);
    for step in [root.clone(), root.inverse()] {
        let mut acc = start.clone();
        for _ in 0..64 {
            acc = grp.dehn_reduce(&acc.concat(&step));
            let canon = grp.canonical_word(&acc);
            if canon.key() < best.key() {
                best = canon;
            }
            if acc.len() > bound {
                break;
            }
        }
    }
    best
}

pub fn lifts(
    c: &CurveClass,
    grp: &SurfaceGroup,
    depth: usize,
) -> Result<LiftSet, CurveError> {
    let root = c.class.root.clone();
    let base_axis = grp.matrix(&root).axis(PREC_CAP, None)?;
    let mut by_rep: BTreeMap<(usize, Vec<u32>), GroupWord> = BTreeMap::new();
    for h in grp.free_ball(depth) {
        let rep = coset_rep(grp, &h, &root);
        by_rep.entry(rep.key()).or_insert(rep);
    }
    // Conjugator matrices share prefixes heavily; build them with a prefix
    // cache so each representative costs one composition.
    let mut prefix: BTreeMap<Vec<i16>, crate::geom::MobiusMap> = BTreeMap::new();
    let mut matrix_of = |rep: &GroupWord| {
        let mut known = 0;
        for k in (0..=rep.len()).rev() {
            if k == 0 || prefix.contains_key(&rep.letters()[..k]) {
                known = k;
                break;
            }
        }
        let mut m = if known == 0 {
            crate::geom::MobiusMap::identity(grp.ctx())
        } else {
            prefix[&rep.letters()[..known]].clone()
        };
        for k in known..rep.len() {
            m = m.compose(&grp.generator(rep.letters()[k]));
            prefix.insert(rep.letters()[..=k].to_vec(), m.clone());
        }
        m
    };
    let mut lifts = Vec::with_capacity(by_rep.len());
    let mut base = 0;
    for (i, rep) in by_rep.into_values().enumerate() {
        if rep.is_empty() {
            base = i;
        }
        let hm = matrix_of(&rep);
        let prov: Arc<str> = Arc::from(format!("[{rep}]").as_str());
        let geo = Geodesic {
            a: base_axis.a.map_by(&hm),
            b: base_axis.b.map_by(&hm),
            prov: Some(prov),
        };
        lifts.push(Lift {
            first_depth: rep.len(),
            rep,
            geo,
        });
    }
    Ok(LiftSet {
        root,
        depth,
        lifts,
        base,
    })
}

/// Probe precision for the cached endpoint coordinates; undecided pairs
/// fall back to the full precision ladder.
const CACHE_PREC: crate::scalar::Prec = 96;

type ProjPt = (Ival, Ival);
type BallPt = (Ball, Ball);

/// Endpoint coordinates of a lift family, refined once at probe precision
/// and shadowed by f64 enclosures for the bulk of the sign tests.
struct CachedEnds {
    iv: [ProjPt; 2],
    fl: [BallPt; 2],
}

struct EndCache {
    ends: Vec<CachedEnds>,
}

fn refine_ends(g: &Geodesic) -> Result<CachedEnds, NumError> {
    let a = g.a.refine(CACHE_PREC)?;
    let b = g.b.refine(CACHE_PREC)?;
    let fl = [(a.0.ball(), a.1.ball()), (b.0.ball(), b.1.ball())];
    Ok(CachedEnds {
        iv: [a, b],
        fl,
    })
}

impl EndCache {
    fn new(ls: &LiftSet) -> Result<Self, NumError> {
        let ends = ls
            .lifts
            .iter()
            .map(|l| refine_ends(&l.geo))
            .collect::<Result<_, _>>()?;
        Ok(EndCache { ends })
    }
}

fn pdet(p: &ProjPt, q: &ProjPt) -> Ival {
    p.0.mul(&q.1, CACHE_PREC)
        .sub(&p.1.mul(&q.0, CACHE_PREC), CACHE_PREC)
}

fn or3_cached(p: &ProjPt, q: &ProjPt, r: &ProjPt) -> Option<i8> {
    let s1 = pdet(p, q).sign()?;
    let s2 = pdet(q, r).sign()?;
    let s3 = pdet(r, p).sign()?;
    if s1 == 0 || s2 == 0 || s3 == 0 {
        return None;
    }
    Some(s1 * s2 * s3)
}

fn bdet(p: &BallPt, q: &BallPt) -> Ball {
    p.0.mul(q.1).sub(p.1.mul(q.0))
}

fn or3_ball(p: &BallPt, q: &BallPt, r: &BallPt) -> Option<i8> {
    let s1 = bdet(p, q).sign()?;
    let s2 = bdet(q, r).sign()?;
    let s3 = bdet(r, p).sign()?;
    Some(s1 * s2 * s3)
}

/// Linking from cached coordinates: f64 enclosures first, probe-precision
/// intervals next, the certified ladder last. Every stage is conservative,
/// so the first certified answer stands.
fn linked_pair(
    e1: &CachedEnds,
    e2: &CachedEnds,
    g1: &Geodesic,
    g2: &Geodesic,
) -> Result<bool, NumError> {
    if let (Some(s1), Some(s2)) = (
        or3_ball(&e1.fl[0], &e2.fl[0], &e1.fl[1]),
        or3_ball(&e1.fl[0], &e2.fl[1], &e1.fl[1]),
    ) {
        return Ok(s1 != s2);
    }
    if let (Some(s1), Some(s2)) = (
        or3_cached(&e1.iv[0], &e2.iv[0], &e1.iv[1]),
        or3_cached(&e1.iv[0], &e2.iv[1], &e1.iv[1]),
    ) {
        return Ok(s1 != s2);
    }
    Ok(linking(g1, g2, PREC_CAP)? == LinkClass::Linked)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimpleVerdict {
    SimpleUpTo(usize),
    /// Certified crossing pair of lifts, by coset representative.
    NotSimple {
        rep1: GroupWord,
        rep2: GroupWord,
    },
}

/// Pairwise linking over the depth-d lift family. A Linked pair is a
/// permanent self-crossing certificate; all-Unlinked is relative to depth.
pub fn is_simple(
    c: &CurveClass,
    grp: &SurfaceGroup,
    depth: usize,
) -> Result<SimpleVerdict, CurveError> {
    let ls = lifts(c, grp, depth)?;
    let cache = EndCache::new(&ls)?;
    for i in 0..ls.lifts.len() {
        for j in (i + 1)..ls.lifts.len() {
            if linked_pair(
                &cache.ends[i],
                &cache.ends[j],
                &ls.lifts[i].geo,
                &ls.lifts[j].geo,
            )? {
                return Ok(SimpleVerdict::NotSimple {
                    rep1: ls.lifts[i].rep.clone(),
                    rep2: ls.lifts[j].rep.clone(),
                });
            }
        }
    }
    Ok(SimpleVerdict::SimpleUpTo(depth))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntersectionCount {
    pub count: u64,
    /// Set when the orbit set is stable over two consecutive depths: no
    /// frontier lift contributes a crossing orbit that the previous depth
    /// had not already seen. Unset counts are certified lower bounds only.
    pub exact: bool,
    pub depth: usize,
}

/// Crossings of the base lift of c1 with the lift family of c2, counted
/// modulo the <root1> action. Each surviving orbit is one intersection
/// point of the underlying closed geodesics.
pub fn intersection_number(
    c1: &CurveClass,
    c2: &CurveClass,
    grp: &SurfaceGroup,
    depth: usize,
) -> Result<IntersectionCount, CurveError> {
    let r1 = &c1.class.root;
    let ax1 = grp.matrix(r1).axis(PREC_CAP, Some(Arc::from("[base1]")))?;
    let e1 = refine_ends(&ax1)?;
    let ls2 = lifts(c2, grp, depth)?;
    let cache = EndCache::new(&ls2)?;

    // Same class: the identity coset is the base lift itself; skip it.
    let same = c1.class.representative == c2.class.representative;

    let orbit_range = depth as i32 + 4;
    let mut orbits_prev: BTreeMap<(usize, Vec<u32>), ()> = BTreeMap::new();
    let mut orbits_now: BTreeMap<(usize, Vec<u32>), ()> = BTreeMap::new();
    for (li, lift) in ls2.lifts.iter().enumerate() {
        if same && lift.rep.is_empty() {
            continue;
        }
        if !linked_pair(&e1, &cache.ends[li], &ax1, &lift.geo)? {
            continue;
        }
        // Orbit of the coset under left multiplication by root1 powers.
        let mut key = lift.rep.key();
        for j in -orbit_range..=orbit_range {
            let p = if j >= 0 {
                r1.pow(j as u32)
            } else {
                r1.inverse().pow((-j) as u32)
            };
            let k = coset_rep(grp, &p.concat(&lift.rep), &ls2.root).key();
            if k < key {
                key = k;
            }
        }
        if lift.first_depth < ls2.depth {
            orbits_prev.insert(key.clone(), ());
        }
        orbits_now.insert(key, ());
    }
    let count = orbits_now.len() as u64;
    let exact = depth >= 1 && orbits_prev == orbits_now;
    Ok(IntersectionCount {
        count,
        exact,
        depth,
    })
}

#[derive(Clone, Debug)]
pub struct FillingCertificate {
    pub word_cap: usize,
    pub depth: usize,
    /// Every simple class checked against, by canonical representative.
    pub checked: Vec<GroupWord>,
    /// Always true: the test is bounded by the word cap, it is not a
    /// proof of fillingness.
    pub bounded: bool,
}

#[derive(Clone, Debug)]
pub enum FillingVerdict {
    Filling(FillingCertificate),
    NotFilling { witness: GroupWord },
}

/// Bounded filling test: c must cross every simple class of word length
/// at most `word_cap`. A certified-disjoint simple class is a NotFilling
/// witness; an undecided disjointness aborts with a cap error.
pub fn is_filling(
    c: &CurveClass,
    grp: &SurfaceGroup,
    depth: usize,
    word_cap: usize,
) -> Result<FillingVerdict, CurveError> {
    let peripheral = if grp.kind == GroupKind::Punctured {
        Some(grp.conjugacy_class(grp.relator())?.representative)
    } else {
        None
    };
    let mut seen: BTreeMap<(usize, Vec<u32>), ()> = BTreeMap::new();
    let mut checked = Vec::new();
    for w in grp.enumerate(word_cap) {
        if w.is_empty() {
            continue;
        }
        let cls = grp.conjugacy_class(&w)?;
        if cls.power != 1
            || cls.representative == c.class.representative
            || peripheral.as_ref() == Some(&cls.representative)
            || seen
                .insert(cls.representative.key(), ())
                .is_some()
        {
            continue;
        }
        let cand = CurveClass {
            class: cls,
            simple: None,
        };
        if !matches!(is_simple(&cand, grp, depth)?, SimpleVerdict::SimpleUpTo(_)) {
            continue;
        }
        let inter = intersection_number(c, &cand, grp, depth)?;
        if inter.count == 0 {
            if inter.exact {
                return Ok(FillingVerdict::NotFilling {
                    witness: cand.class.representative,
                });
            }
            return Err(CurveError::Cap(format!(
                "disjointness of {} undecided at depth {depth}",
                cand.class.representative
            )));
        }
        checked.push(cand.class.representative);
    }
    Ok(FillingVerdict::Filling(FillingCertificate {
        word_cap,
        depth,
        checked,
        bounded: true,
    }))
}

/// Endpoint-interval comparison of two complete geodesics, used to
/// cross-check the combinatorial coset dedup. Returns Some(true) when the
/// unordered endpoint pairs certifiably agree is impossible numerically,
/// so agreement here means "not separated at the probe precision" while
/// Some(false) is a certified difference.
pub fn endpoints_consistent(
    g1: &Geodesic,
    g2: &Geodesic,
    prec: crate::scalar::Prec,
) -> Result<Option<bool>, CurveError> {
    let cross = |p: &crate::geom::BoundaryPoint,
                 q: &crate::geom::BoundaryPoint|
     -> Result<Option<bool>, CurveError> {
        let (px, py) = p.refine(prec)?;
        let (qx, qy) = q.refine(prec)?;
        let d = px.mul(&qy, prec).sub(&qx.mul(&py, prec), prec);
        if d.separated_from(&crate::scalar::Ival::zero()) {
            Ok(Some(false))
        } else if d.contains_zero() {
            Ok(Some(true))
        } else {
            Ok(None)
        }
    };
    let pairing = |x1: Option<bool>, x2: Option<bool>| match (x1, x2) {
        (Some(a), Some(b)) => Some(a && b),
        _ => None,
    };
    let direct = pairing(cross(&g1.a, &g2.a)?, cross(&g1.b, &g2.b)?);
    let swapped = pairing(cross(&g1.a, &g2.b)?, cross(&g1.b, &g2.a)?);
    Ok(match (direct, swapped) {
        (Some(true), _) | (_, Some(true)) => Some(true),
        (Some(false), Some(false)) => Some(false),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;
    use crate::scalar::Prec;

    fn closed2() -> SurfaceGroup {
        build_group(2, GroupKind::Closed).unwrap()
    }

    fn curve(grp: &SurfaceGroup, text: &str) -> CurveClass {
        let w = GroupWord::parse(text, grp.genus).unwrap();
        CurveClass::new(grp, &w).unwrap()
    }

    #[test]
    fn base_lift_only_at_depth_zero() {
        let g = closed2();
        let ls = lifts(&curve(&g, "a1"), &g, 0).unwrap();
        assert_eq!(ls.lifts.len(), 1);
        assert_eq!(ls.base, 0);
        assert!(ls.lifts[0].rep.is_empty());
    }

    #[test]
    fn lift_counts_match_coset_counts() {
        let g = closed2();
        let c = curve(&g, "a1");
        assert_eq!(lifts(&c, &g, 1).unwrap().lifts.len(), 7);
        assert_eq!(lifts(&c, &g, 2).unwrap().lifts.len(), 49);
        assert_eq!(lifts(&c, &g, 3).unwrap().lifts.len(), 343);
    }

    #[test]
    fn dedup_matches_endpoint_geometry() {
        let g = closed2();
        let c = curve(&g, "a1");
        let ls = lifts(&c, &g, 2).unwrap();
        let prec: Prec = 192;
        for i in 0..ls.lifts.len().min(12) {
            for j in 0..ls.lifts.len().min(12) {
                let verdict =
                    endpoints_consistent(&ls.lifts[i].geo, &ls.lifts[j].geo, prec)
                        .unwrap();
                if i == j {
                    assert_eq!(verdict, Some(true));
                } else {
                    assert_eq!(verdict, Some(false), "lifts {i} {j} not separated");
                }
            }
        }
    }

    #[test]
    fn conjugator_equivariance() {
        // axis(h w h^-1) must equal h(axis(w)) as an endpoint pair.
        let g = closed2();
        let w = GroupWord::parse("a1", 2).unwrap();
        let h = GroupWord::parse("b2 a1", 2).unwrap();
        let direct = g
            .matrix(&w.conjugate_by(&h))
            .axis(PREC_CAP, None)
            .unwrap();
        let base = g.matrix(&w).axis(PREC_CAP, None).unwrap();
        let mapped = base.map_by(&g.matrix(&h));
        assert_eq!(
            endpoints_consistent(&direct, &mapped, 192).unwrap(),
            Some(true)
        );
    }

    #[test]
    fn coset_membership_rule() {
        let g = closed2();
        let root = GroupWord::parse("a1", 2).unwrap();
        let h1 = GroupWord::parse("b1 a1 a1", 2).unwrap();
        let h2 = GroupWord::parse("b1 A1", 2).unwrap();
        let h3 = GroupWord::parse("a1 b1", 2).unwrap();
        assert_eq!(coset_rep(&g, &h1, &root), coset_rep(&g, &h2, &root));
        assert_ne!(coset_rep(&g, &h3, &root), coset_rep(&g, &h1, &root));
    }

    #[test]
    fn generator_curve_is_simple() {
        let g = closed2();
        let c = curve(&g, "a1");
        assert_eq!(is_simple(&c, &g, 2).unwrap(), SimpleVerdict::SimpleUpTo(2));
    }

    #[test]
    fn simplicity_is_conjugation_invariant() {
        let g = closed2();
        let w = GroupWord::parse("a1 b1 A1 B1 a2", 2).unwrap();
        let h = GroupWord::parse("b2", 2).unwrap();
        let v1 = is_simple(&curve(&g, "a1 b1 A1 B1 a2"), &g, 2).unwrap();
        let conj = CurveClass::new(&g, &w.conjugate_by(&h)).unwrap();
        let v2 = is_simple(&conj, &g, 2).unwrap();
        assert_eq!(
            matches!(v1, SimpleVerdict::NotSimple { .. }),
            matches!(v2, SimpleVerdict::NotSimple { .. })
        );
    }

    #[test]
    fn handle_curves_are_disjoint() {
        let g = closed2();
        let i = intersection_number(&curve(&g, "a1"), &curve(&g, "a2"), &g, 3).unwrap();
        assert_eq!(i.count, 0);
        assert!(i.exact);
    }

    #[test]
    fn dual_handle_curves_cross_once() {
        let g = closed2();
        let i = intersection_number(&curve(&g, "a1"), &curve(&g, "b1"), &g, 3).unwrap();
        assert_eq!(i.count, 1);
        assert!(i.exact);
    }

    #[test]
    fn intersection_is_symmetric() {
        let g = closed2();
        for (x, y) in [("a1", "b1"), ("a1", "a2"), ("b1", "b2")] {
            let i1 = intersection_number(&curve(&g, x), &curve(&g, y), &g, 3).unwrap();
            let i2 = intersection_number(&curve(&g, y), &curve(&g, x), &g, 3).unwrap();
            assert_eq!(i1.count, i2.count);
        }
    }

    #[test]
    fn count_monotone_in_depth() {
        let g = closed2();
        let c1 = curve(&g, "a1 b1");
        let c2 = curve(&g, "b1 a2");
        let mut prev = 0;
        for d in 1..=3 {
            let i = intersection_number(&c1, &c2, &g, d).unwrap();
            assert!(i.count >= prev);
            prev = i.count;
        }
    }

    #[test]
    fn generator_does_not_fill() {
        let g = closed2();
        match is_filling(&curve(&g, "a1"), &g, 2, 1).unwrap() {
            FillingVerdict::NotFilling { witness } => {
                let w = witness.to_string();
                assert!(w == "a2" || w == "b2", "witness {w}");
            }
            FillingVerdict::Filling(_) => panic!("generator curve cannot fill"),
        }
    }

    #[test]
    fn g_invariance_of_lift_family() {
        // h(depth-2 family) lands inside the depth-3 family.
        let g = closed2();
        let c = curve(&g, "a1");
        let small = lifts(&c, &g, 2).unwrap();
        let big = lifts(&c, &g, 3).unwrap();
        let h = GroupWord::parse("b2", 2).unwrap();
        for lift in &small.lifts {
            let moved = coset_rep(&g, &h.concat(&lift.rep), &small.root);
            assert!(
                big.lifts.iter().any(|l| l.rep == moved),
                "translate of {} missing",
                lift.rep
            );
        }
    }
}
