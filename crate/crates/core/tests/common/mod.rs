#![allow(dead_code)]

use cliffordix::curve::max_nodes;
use cliffordix::numerics::floor_div;
use cliffordix::CurveSpec;

/// Built-in curves of the abstract families with genus in `genera`.
pub fn abstract_curves(genera: std::ops::RangeInclusive<i64>) -> Vec<CurveSpec> {
    let mut out = Vec::new();
    for g in genera {
        out.push(CurveSpec::General { genus: g });
        out.push(CurveSpec::Hyperelliptic { genus: g });
        out.push(CurveSpec::Trigonal { genus: g });
        if g >= 5 {
            out.push(CurveSpec::Bielliptic { genus: g });
        }
        for k in [4, 5, 6, 7] {
            if k <= floor_div(g + 3, 2) {
                out.push(CurveSpec::GeneralKGonal { genus: g, k });
            }
        }
    }
    out
}

/// Smooth plane curves and general nodal plane curves (fewest, middle and
/// most nodes) with degree in `degrees`.
pub fn plane_curves(degrees: std::ops::RangeInclusive<i64>) -> Vec<CurveSpec> {
    let mut out = Vec::new();
    for degree in degrees {
        if degree >= 5 {
            out.push(CurveSpec::SmoothPlane { degree });
        }
        if degree >= 7 {
            let max = max_nodes(degree);
            let mut nodes = vec![1, (1 + max) / 2, max];
            nodes.dedup();
            for nodes in nodes {
                out.push(CurveSpec::GeneralNodalPlane { degree, nodes });
            }
        }
    }
    out
}

/// Every built-in curve of genus at most `max_genus`.
pub fn all_curves_up_to(max_genus: i64) -> Vec<CurveSpec> {
    let mut out = abstract_curves(4..=max_genus);
    for degree in 5.. {
        if (degree - 1) * (degree - 2) / 2 - max_nodes(degree).max(0) > max_genus {
            break;
        }
        if degree >= 5 && (degree - 1) * (degree - 2) / 2 <= max_genus {
            out.push(CurveSpec::SmoothPlane { degree });
        }
        if degree >= 7 {
            let plane_genus = (degree - 1) * (degree - 2) / 2;
            for nodes in 1..=max_nodes(degree) {
                if plane_genus - nodes <= max_genus {
                    out.push(CurveSpec::GeneralNodalPlane { degree, nodes });
                }
            }
        }
    }
    out
}
