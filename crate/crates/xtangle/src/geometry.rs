//! The coherence triangle: every X state maps to a point `(x, y)` of
//! coherence magnitudes, confined by positivity to the rectangle
//! `[0, x0] x [0, y0]`, which in turn lives inside the right triangle
//! `x + y <= 1/2`. Entanglement, separability, rank, and the geometric
//! entanglement measure are all read off from where the point sits.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::XState;
use crate::tol;

/// Coherence magnitudes `(x, y)` of an X state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoherencePoint {
    pub x: f64,
    pub y: f64,
}

/// Positivity bounds on the coherences: `x0 = sqrt(r11 r44)` and
/// `y0 = sqrt(r22 r33)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoherenceBounds {
    pub x0: f64,
    pub y0: f64,
}

/// Coarse position of the bounds rectangle inside the triangle, fixed by
/// how `x0` and `y0` compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Region {
    /// `x0 = y0`: the rectangle is a square and every point in it is
    /// separable.
    M0,
    /// `y0 < x0`: an entanglement rectangle sits right of the separable
    /// square.
    M1,
    /// `x0 < y0`: the entanglement rectangle sits above the separable
    /// square.
    M2,
}

/// Fine position of a point within its region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Subregion {
    Interior,
    SeparableSquare,
    VertexQ0,
    RightEdge,
    TopEdge,
    #[serde(rename = "leg_Mx")]
    LegMx,
    #[serde(rename = "leg_My")]
    LegMy,
}

/// Full classification of a point: region, subregion, and the matrix rank
/// the position dictates, when it dictates one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionClass {
    pub region: Region,
    pub subregion: Subregion,
    /// `None` when the rank depends on populations the point does not
    /// determine.
    pub predicted_rank: Option<usize>,
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let label = match self {
            Region::M0 => "M0",
            Region::M1 => "M1",
            Region::M2 => "M2",
        };
        f.write_str(label)
    }
}

impl std::fmt::Display for Subregion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let label = match self {
            Subregion::Interior => "interior",
            Subregion::SeparableSquare => "separable_square",
            Subregion::VertexQ0 => "vertex_q0",
            Subregion::RightEdge => "right_edge",
            Subregion::TopEdge => "top_edge",
            Subregion::LegMx => "leg_Mx",
            Subregion::LegMy => "leg_My",
        };
        f.write_str(label)
    }
}

/// Extracts the coherence point and bounds of a state, checking triangle
/// membership on the way out.
pub fn to_point(state: &XState) -> Result<(CoherencePoint, CoherenceBounds)> {
    let point = state.point();
    let bounds = state.bounds();
    let point_sum = point.x + point.y;
    if point_sum > 0.5 + tol::GEOMETRY {
        return Err(Error::OutsideTriangle {
            x: point.x,
            y: point.y,
            sum: point_sum,
        });
    }
    let bound_sum = bounds.x0 + bounds.y0;
    if bound_sum > 0.5 + tol::GEOMETRY {
        return Err(Error::OutsideTriangle {
            x: bounds.x0,
            y: bounds.y0,
            sum: bound_sum,
        });
    }
    Ok((point, bounds))
}

/// Chebyshev distance between two points.
pub fn chebyshev(a: CoherencePoint, b: CoherencePoint) -> f64 {
    (a.x - b.x).abs().max((a.y - b.y).abs())
}

/// Geometric entanglement measure: twice the Chebyshev distance from the
/// point to the separable part of its rectangle,
/// `2 max{0, x - y0, y - x0}`.
pub fn l_measure(p: CoherencePoint, b: CoherenceBounds) -> f64 {
    let over_x = p.x - b.y0;
    let over_y = p.y - b.x0;
    // Both excesses positive would need x > y0 >= y > x0 >= x; impossible
    // for a point inside its own bounds.
    debug_assert!(
        !(p.x <= b.x0 + tol::GEOMETRY
            && p.y <= b.y0 + tol::GEOMETRY
            && over_x > tol::GEOMETRY
            && over_y > tol::GEOMETRY),
        "both coherence excesses positive for p=({}, {}), bounds=({}, {})",
        p.x,
        p.y,
        b.x0,
        b.y0
    );
    2.0 * over_x.max(over_y).max(0.0)
}

/// Largest value the measure can reach over states with the given bounds:
/// `2 |x0 - y0|`, attained on the far edge of the entanglement rectangle.
pub fn l_max(b: CoherenceBounds) -> f64 {
    2.0 * (b.x0 - b.y0).abs()
}

/// The separable point closest to `p` under the Chebyshev metric. Points
/// with no entanglement are their own closest point.
pub fn closest_separable(p: CoherencePoint, b: CoherenceBounds) -> CoherencePoint {
    let over_x = p.x - b.y0;
    let over_y = p.y - b.x0;
    if over_x > 0.0 && over_x >= over_y {
        CoherencePoint { x: b.y0, y: p.y }
    } else if over_y > 0.0 {
        CoherencePoint { x: p.x, y: b.x0 }
    } else {
        p
    }
}

/// Analytic maximum of `x0 + y0` over all density matrices.
pub fn max_extreme_sum() -> f64 {
    0.5
}

/// Corners of the separable square, counterclockwise from the origin. The
/// side is the smaller bound.
pub fn separable_square(b: CoherenceBounds) -> [CoherencePoint; 4] {
    let side = b.x0.min(b.y0);
    [
        CoherencePoint { x: 0.0, y: 0.0 },
        CoherencePoint { x: side, y: 0.0 },
        CoherencePoint { x: side, y: side },
        CoherencePoint { x: 0.0, y: side },
    ]
}

/// Corners of the entanglement rectangle, counterclockwise from its
/// bottom-left corner, or `None` when the bounds leave no room for one.
pub fn entanglement_rectangle(
    b: CoherenceBounds,
    tolerance: f64,
) -> Option<[CoherencePoint; 4]> {
    if (b.x0 - b.y0).abs() <= tolerance {
        return None;
    }
    if b.y0 < b.x0 {
        Some([
            CoherencePoint { x: b.y0, y: 0.0 },
            CoherencePoint { x: b.x0, y: 0.0 },
            CoherencePoint { x: b.x0, y: b.y0 },
            CoherencePoint { x: b.y0, y: b.y0 },
        ])
    } else {
        Some([
            CoherencePoint { x: 0.0, y: b.x0 },
            CoherencePoint { x: b.x0, y: b.x0 },
            CoherencePoint { x: b.x0, y: b.y0 },
            CoherencePoint { x: 0.0, y: b.y0 },
        ])
    }
}

/// Classifies a point against its bounds.
///
/// The region comes from comparing `x0` with `y0`; the subregion from
/// comparing the point to the rectangle edges, with the degenerate legs
/// (one bound zero) taking precedence. The predicted rank counts the
/// eigenvalues the position forces to zero: each saturated coherence
/// closes one, so interior points are rank 4, single edges rank 3, the
/// vertex rank 2. On a leg the rank depends on which of the two paired
/// populations vanish, which the point alone does not determine, except
/// when the surviving bound is 1/2 and pins both populations.
pub fn classify(
    p: CoherencePoint,
    b: CoherenceBounds,
    tolerance: f64,
) -> Result<RegionClass> {
    if p.x < -tolerance
        || p.y < -tolerance
        || p.x > b.x0 + tolerance
        || p.y > b.y0 + tolerance
    {
        return Err(Error::PointOutsideBounds {
            x: p.x,
            y: p.y,
            x0: b.x0,
            y0: b.y0,
        });
    }

    let degenerate = b.x0 <= tolerance && b.y0 <= tolerance;
    let region = if degenerate || (b.x0 - b.y0).abs() <= tolerance {
        Region::M0
    } else if b.y0 < b.x0 {
        Region::M1
    } else {
        Region::M2
    };

    let on_right = p.x >= b.x0 - tolerance;
    let on_top = p.y >= b.y0 - tolerance;

    let subregion = if degenerate {
        Subregion::SeparableSquare
    } else if region == Region::M1 && b.y0 <= tolerance {
        Subregion::LegMx
    } else if region == Region::M2 && b.x0 <= tolerance {
        Subregion::LegMy
    } else if on_right && on_top {
        Subregion::VertexQ0
    } else if on_right {
        Subregion::RightEdge
    } else if on_top {
        Subregion::TopEdge
    } else {
        let separable = match region {
            Region::M0 => true,
            Region::M1 => p.x <= b.y0 + tolerance,
            Region::M2 => p.y <= b.x0 + tolerance,
        };
        if separable {
            Subregion::SeparableSquare
        } else {
            Subregion::Interior
        }
    };

    let predicted_rank = match subregion {
        Subregion::LegMx => {
            if b.x0 >= 0.5 - tolerance {
                Some(if on_right { 1 } else { 2 })
            } else {
                None
            }
        }
        Subregion::LegMy => {
            if b.y0 >= 0.5 - tolerance {
                Some(if on_top { 1 } else { 2 })
            } else {
                None
            }
        }
        _ if degenerate => None,
        _ => Some(4 - usize::from(on_right) - usize::from(on_top)),
    };

    Ok(RegionClass {
        region,
        subregion,
        predicted_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::Bell;
    use approx::assert_abs_diff_eq;

    fn p(x: f64, y: f64) -> CoherencePoint {
        CoherencePoint { x, y }
    }

    fn b(x0: f64, y0: f64) -> CoherenceBounds {
        CoherenceBounds { x0, y0 }
    }

    #[test]
    fn werner_points_and_measure() {
        let pure = XState::werner(Bell::PhiPlus, 1.0).unwrap();
        let (point, bounds) = to_point(&pure).unwrap();
        assert_abs_diff_eq!(point.x, 0.5, epsilon = 1e-15);
        assert_eq!(point.y, 0.0);
        assert_abs_diff_eq!(bounds.x0, 0.5, epsilon = 1e-15);
        assert_eq!(bounds.y0, 0.0);
        assert_abs_diff_eq!(l_measure(point, bounds), 1.0, epsilon = 1e-15);

        let threshold = XState::werner(Bell::PhiPlus, 1.0 / 3.0).unwrap();
        let (point, bounds) = to_point(&threshold).unwrap();
        assert!(l_measure(point, bounds).abs() < 1e-15);

        let mixed = XState::werner(Bell::PhiPlus, 0.6).unwrap();
        let (point, bounds) = to_point(&mixed).unwrap();
        assert_abs_diff_eq!(l_measure(point, bounds), 0.4, epsilon = 1e-14);
    }

    #[test]
    fn maximally_mixed_state_sits_at_the_origin() {
        let state = XState::diagonal([0.25; 4]).unwrap();
        let (point, bounds) = to_point(&state).unwrap();
        assert_eq!((point.x, point.y), (0.0, 0.0));
        assert_abs_diff_eq!(bounds.x0, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(bounds.y0, 0.25, epsilon = 1e-15);
        let class = classify(point, bounds, tol::GEOMETRY).unwrap();
        assert_eq!(class.region, Region::M0);
        assert_eq!(class.subregion, Subregion::SeparableSquare);
        assert_eq!(class.predicted_rank, Some(4));
    }

    #[test]
    fn square_region_subregions_and_ranks() {
        let bounds = b(0.25, 0.25);
        let interior = classify(p(0.1, 0.05), bounds, tol::GEOMETRY).unwrap();
        assert_eq!(interior.region, Region::M0);
        assert_eq!(interior.subregion, Subregion::SeparableSquare);
        assert_eq!(interior.predicted_rank, Some(4));

        let vertex = classify(p(0.25, 0.25), bounds, tol::GEOMETRY).unwrap();
        assert_eq!(vertex.subregion, Subregion::VertexQ0);
        assert_eq!(vertex.predicted_rank, Some(2));

        let edge = classify(p(0.25, 0.1), bounds, tol::GEOMETRY).unwrap();
        assert_eq!(edge.subregion, Subregion::RightEdge);
        assert_eq!(edge.predicted_rank, Some(3));
    }

    #[test]
    fn horizontal_leg_cases() {
        let bounds = b(0.5, 0.0);
        let tip = classify(p(0.5, 0.0), bounds, tol::GEOMETRY).unwrap();
        assert_eq!(tip.region, Region::M1);
        assert_eq!(tip.subregion, Subregion::LegMx);
        assert_eq!(tip.predicted_rank, Some(1));

        let inner = classify(p(0.3, 0.0), bounds, tol::GEOMETRY).unwrap();
        assert_eq!(inner.subregion, Subregion::LegMx);
        assert_eq!(inner.predicted_rank, Some(2));

        let loose = classify(p(0.3, 0.0), b(0.4, 0.0), tol::GEOMETRY).unwrap();
        assert_eq!(loose.subregion, Subregion::LegMx);
        assert_eq!(loose.predicted_rank, None);
    }

    #[test]
    fn vertical_leg_cases() {
        let tip = classify(p(0.0, 0.5), b(0.0, 0.5), tol::GEOMETRY).unwrap();
        assert_eq!(tip.region, Region::M2);
        assert_eq!(tip.subregion, Subregion::LegMy);
        assert_eq!(tip.predicted_rank, Some(1));

        let loose = classify(p(0.0, 0.2), b(0.0, 0.4), tol::GEOMETRY).unwrap();
        assert_eq!(loose.subregion, Subregion::LegMy);
        assert_eq!(loose.predicted_rank, None);
    }

    #[test]
    fn tall_rectangle_vertex_is_rank_two() {
        let class = classify(p(0.1, 0.3), b(0.1, 0.3), tol::GEOMETRY).unwrap();
        assert_eq!(class.region, Region::M2);
        assert_eq!(class.subregion, Subregion::VertexQ0);
        assert_eq!(class.predicted_rank, Some(2));
    }

    #[test]
    fn degenerate_corner_is_separable_and_unconstrained() {
        let class = classify(p(0.0, 0.0), b(0.0, 0.0), tol::GEOMETRY).unwrap();
        assert_eq!(class.region, Region::M0);
        assert_eq!(class.subregion, Subregion::SeparableSquare);
        assert_eq!(class.predicted_rank, None);
    }

    #[test]
    fn classify_rejects_points_outside_their_bounds() {
        assert!(matches!(
            classify(p(0.3, 0.0), b(0.2, 0.1), tol::GEOMETRY),
            Err(Error::PointOutsideBounds { .. })
        ));
    }

    #[test]
    fn closest_point_mirrors_the_active_excess() {
        // Wide rectangle: the excess is horizontal.
        let wide = closest_separable(p(0.35, 0.05), b(0.4, 0.1));
        assert_eq!((wide.x, wide.y), (0.1, 0.05));
        // Tall rectangle: the excess is vertical.
        let tall = closest_separable(p(0.05, 0.35), b(0.1, 0.4));
        assert_eq!((tall.x, tall.y), (0.05, 0.1));
        // Separable points stay put.
        let fixed = closest_separable(p(0.05, 0.05), b(0.4, 0.1));
        assert_eq!((fixed.x, fixed.y), (0.05, 0.05));
    }

    #[test]
    fn measure_is_twice_the_distance_to_the_closest_point() {
        for (point, bounds) in [
            (p(0.35, 0.05), b(0.4, 0.1)),
            (p(0.05, 0.35), b(0.1, 0.4)),
            (p(0.5, 0.0), b(0.5, 0.0)),
        ] {
            let q = closest_separable(point, bounds);
            assert_abs_diff_eq!(
                l_measure(point, bounds),
                2.0 * chebyshev(point, q),
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn measure_ceiling_tracks_the_bound_gap() {
        assert_abs_diff_eq!(l_max(b(0.5, 0.0)), 1.0, epsilon = 1e-15);
        assert_eq!(l_max(b(0.25, 0.25)), 0.0);
        for q in [0.2, 0.5, 0.9] {
            let bounds = b((1.0 + q) / 4.0, (1.0 - q) / 4.0);
            assert_abs_diff_eq!(l_max(bounds), q, epsilon = 1e-15);
        }
    }

    #[test]
    fn rectangle_and_square_corners() {
        let corners = separable_square(b(0.4, 0.1));
        assert_eq!((corners[2].x, corners[2].y), (0.1, 0.1));

        let wide = entanglement_rectangle(b(0.4, 0.1), tol::GEOMETRY).unwrap();
        assert_eq!((wide[0].x, wide[0].y), (0.1, 0.0));
        assert_eq!((wide[2].x, wide[2].y), (0.4, 0.1));

        let tall = entanglement_rectangle(b(0.1, 0.4), tol::GEOMETRY).unwrap();
        assert_eq!((tall[0].x, tall[0].y), (0.0, 0.1));
        assert_eq!((tall[2].x, tall[2].y), (0.1, 0.4));

        assert!(entanglement_rectangle(b(0.25, 0.25), tol::GEOMETRY).is_none());
    }

    #[test]
    fn region_labels_serialize_to_their_display_names() {
        let class = RegionClass {
            region: Region::M1,
            subregion: Subregion::LegMx,
            predicted_rank: Some(2),
        };
        let json = serde_json::to_string(&class).unwrap();
        assert_eq!(
            json,
            "{\"region\":\"M1\",\"subregion\":\"leg_Mx\",\"predicted_rank\":2}"
        );
    }
}
