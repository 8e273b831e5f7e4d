use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{cross_ratio, ParamVector};
use crate::counting::Partition;
use crate::exactnum::GaussianRational;
use crate::pencil::{EigenGroup, ProjectivePoint};

/// Continuous invariants of an eigenvalue configuration with at least four
/// points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Moduli {
    /// All points share one Jordan type (`extra_h` set), or one point has a
    /// unique type and serves as the anchor.
    Symmetric(ParamVector),
    /// Any other mix of Jordan types.
    Framed(FramedInvariant),
}

/// Least `(frame types, sorted (type, cr(a, b, c, x)))` over all ordered
/// frames `(a, b, c)` of distinct eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FramedInvariant {
    pub frame: [Partition; 3],
    pub points: Vec<(Partition, GaussianRational)>,
}

impl fmt::Display for Moduli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Moduli::Symmetric(v) => write!(f, "{v}"),
            Moduli::Framed(fr) => {
                f.write_str("{")?;
                for t in &fr.frame {
                    write_tag(f, t)?;
                }
                f.write_str(" |")?;
                for (k, (t, v)) in fr.points.iter().enumerate() {
                    f.write_str(if k == 0 { " " } else { ", " })?;
                    write_tag(f, t)?;
                    write!(f, ":{v}")?;
                }
                f.write_str("}")
            }
        }
    }
}

fn write_tag(f: &mut fmt::Formatter<'_>, t: &Partition) -> fmt::Result {
    f.write_str("(")?;
    for p in t {
        write!(f, "{p}")?;
    }
    f.write_str(")")
}

impl Serialize for Moduli {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Moduli::Symmetric(v) => v.serialize(s),
            Moduli::Framed(fr) => fr.serialize(s),
        }
    }
}

/// Moduli of the eigenvalue configuration, `None` below four points.
pub fn moduli_of(groups: &[EigenGroup]) -> Option<Moduli> {
    if groups.len() < 4 {
        return None;
    }
    let mut classes: BTreeMap<&Partition, Vec<usize>> = BTreeMap::new();
    for (k, g) in groups.iter().enumerate() {
        classes.entry(&g.blocks).or_default().push(k);
    }
    let points: Vec<ProjectivePoint> = groups.iter().map(|g| g.point.clone()).collect();
    let classes: Vec<Vec<usize>> = classes.into_values().collect();
    match classes.as_slice() {
        [_] => Some(Moduli::Symmetric(symmetric_canonical(&points, None))),
        [a, b] if a.len() == 1 || b.len() == 1 => {
            let anchor = if a.len() == 1 { a[0] } else { b[0] };
            Some(Moduli::Symmetric(symmetric_canonical(&points, Some(anchor))))
        }
        _ => Some(Moduli::Framed(framed(groups))),
    }
}

/// Least parameter vector over all orderings of `points` that keep the
/// given anchor (any anchor when `None`, which sets `extra_h`).
///
/// Orderings of the points other than anchor, `p₁` and `p₂` only permute the
/// vector, so sorting it covers them.
pub(crate) fn symmetric_canonical(points: &[ProjectivePoint], anchor: Option<usize>) -> ParamVector {
    let anchors: Vec<usize> = match anchor {
        Some(a) => vec![a],
        None => (0..points.len()).collect(),
    };
    let mut best: Option<Vec<GaussianRational>> = None;
    for &a in &anchors {
        for p1 in (0..points.len()).filter(|&x| x != a) {
            for p2 in (0..points.len()).filter(|&x| x != a && x != p1) {
                let mut vals: Vec<GaussianRational> = (0..points.len())
                    .filter(|&x| x != a && x != p1 && x != p2)
                    .map(|x| cross_ratio(&points[a], &points[p1], &points[p2], &points[x]).expect("distinct"))
                    .collect();
                vals.sort();
                if best.as_ref().is_none_or(|b| vals < *b) {
                    best = Some(vals);
                }
            }
        }
    }
    ParamVector::new(best.expect("at least three points"), anchor.is_none())
        .expect("cross ratios of distinct points avoid 0 and 1")
}

fn framed(groups: &[EigenGroup]) -> FramedInvariant {
    let k = groups.len();
    let mut best: Option<FramedInvariant> = None;
    for a in 0..k {
        for b in (0..k).filter(|&x| x != a) {
            for c in (0..k).filter(|&x| x != a && x != b) {
                let mut points: Vec<(Partition, GaussianRational)> = (0..k)
                    .filter(|&x| x != a && x != b && x != c)
                    .map(|x| {
                        let cr = cross_ratio(&groups[a].point, &groups[b].point, &groups[c].point, &groups[x].point)
                            .expect("distinct");
                        (groups[x].blocks.clone(), cr)
                    })
                    .collect();
                points.sort();
                let cand = FramedInvariant {
                    frame: [groups[a].blocks.clone(), groups[b].blocks.clone(), groups[c].blocks.clone()],
                    points,
                };
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
    }
    best.expect("at least four points")
}
