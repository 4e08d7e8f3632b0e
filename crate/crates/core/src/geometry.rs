//! Planar predicates used by the shape checks: convex hulls, hull
//! membership, and line-crossing counts.

use crate::error::{Error, Result};
use crate::shape::{sign_changes_seq, SignSequence};

pub type Point2 = [f64; 2];

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

pub fn to_point2(p: &[f64]) -> Result<Point2> {
    match p {
        [x, y] => Ok([*x, *y]),
        _ => Err(Error::DimensionMismatch {
            expected: 2,
            found: p.len(),
        }),
    }
}

/// Convex hull in counter-clockwise order (Andrew's monotone chain).
/// Collinear boundary points are dropped.
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point2>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Whether `p` lies in the convex polygon `hull` (counter-clockwise), allowing
/// a signed-distance slack of `slack * max(1, diameter)`.
pub fn in_convex_hull(hull: &[Point2], p: Point2, slack: f64) -> bool {
    let diameter = hull
        .iter()
        .flat_map(|a| {
            hull.iter()
                .map(move |b| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt())
        })
        .fold(0.0, f64::max);
    let eps = slack * diameter.max(1.0);
    match hull.len() {
        0 => false,
        1 => dist(hull[0], p) <= eps,
        2 => segment_distance(p, hull[0], hull[1]) <= eps,
        n => (0..n).all(|i| {
            let (a, b) = (hull[i], hull[(i + 1) % n]);
            cross(a, b, p) / dist(a, b) >= -eps
        }),
    }
}

fn dist(a: Point2, b: Point2) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

fn segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    crate::rational::point_segment_distance(&p, &a, &b)
}

/// An infinite line through `origin` with direction `direction`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub origin: Point2,
    pub direction: Point2,
}

impl Line {
    pub fn new(origin: Point2, direction: Point2) -> Result<Self> {
        if direction[0] == 0.0 && direction[1] == 0.0 {
            return Err(Error::InvalidArgument("line direction must be nonzero".into()));
        }
        Ok(Self { origin, direction })
    }

    /// Signed distance of `p` from the line (positive on the left).
    pub fn signed_distance(&self, p: Point2) -> f64 {
        let [dx, dy] = self.direction;
        ((p[1] - self.origin[1]) * dx - (p[0] - self.origin[0]) * dy) / dx.hypot(dy)
    }

    /// Strict sign changes of the signed distance along an ordered point list.
    pub fn crossings(&self, points: &[Point2]) -> usize {
        let values = points.iter().map(|&p| self.signed_distance(p)).collect();
        sign_changes_seq(&SignSequence::new(values))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_of_square_with_interior_points() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5], [0.5, 0.0]];
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 4);
        assert!(in_convex_hull(&hull, [0.5, 0.5], 1e-12));
        assert!(in_convex_hull(&hull, [1.0, 0.3], 1e-12));
        assert!(!in_convex_hull(&hull, [1.0 + 1e-6, 0.3], 1e-12));
    }

    #[test]
    fn degenerate_hulls() {
        let hull = convex_hull(&[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]);
        assert_eq!(hull.len(), 2);
        assert!(in_convex_hull(&hull, [0.5, 0.5], 1e-12));
        assert!(!in_convex_hull(&hull, [0.5, 0.6], 1e-12));
        let hull = convex_hull(&[[1.0, 1.0], [1.0, 1.0]]);
        assert!(in_convex_hull(&hull, [1.0, 1.0], 1e-12));
    }

    #[test]
    fn line_crossings() {
        let line = Line::new([0.0, 0.0], [1.0, 0.0]).unwrap();
        assert!(line.signed_distance([0.0, 2.0]) > 0.0);
        assert!((line.signed_distance([5.0, -3.0]) + 3.0).abs() < 1e-15);
        let zigzag = [[0.0, 1.0], [1.0, -1.0], [2.0, 1.0], [3.0, 0.0], [4.0, -2.0]];
        assert_eq!(line.crossings(&zigzag), 3);
        assert!(Line::new([0.0, 0.0], [0.0, 0.0]).is_err());
    }
}
