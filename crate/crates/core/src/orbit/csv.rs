//! Orbit CSV: `word, a, b, c, d, dist, dir_theta, xi_image_theta` for the
//! half-plane; the half-space variant splits each entry into real and
//! imaginary columns and reports directions as polar/azimuthal angle pairs.
//! Matrices are written in canonical sign; floats carry 12 significant digits.

use std::io::Write;

use super::OrbitRecord;
use crate::error::Result;
use crate::fmt::sig12;
use crate::geometry::{direction_angles, visual_angle, visual_direction_boundary, BoundaryPoint, Model, ModelPoint};
use crate::group::GroupSpec;

pub fn header(model: Model) -> &'static str {
    match model {
        Model::H2 => "word,a,b,c,d,dist,dir_theta,xi_image_theta",
        Model::H3 => {
            "word,a_re,a_im,b_re,b_im,c_re,c_im,d_re,d_im,dist,dir_theta,dir_phi,xi_image_theta,xi_image_phi"
        }
    }
}

fn angles(model: Model, x: &ModelPoint, p: Option<&BoundaryPoint>) -> Vec<String> {
    match (model, p) {
        (Model::H2, Some(p)) => vec![sig12(visual_angle(x, p))],
        (Model::H2, None) => vec![String::new()],
        (Model::H3, Some(p)) => {
            let (theta, phi) = direction_angles(visual_direction_boundary(x, p));
            vec![sig12(theta), sig12(phi)]
        }
        (Model::H3, None) => vec![String::new(), String::new()],
    }
}

/// Writes the records (in the given order) as CSV; `x` is the basepoint the
/// angles are measured from.
pub fn write_orbit_csv<W: Write>(mut out: W, spec: &GroupSpec, x: &ModelPoint, records: &[OrbitRecord]) -> Result<()> {
    let model = spec.model();
    writeln!(out, "{}", header(model))?;
    let labels = spec.labels();
    for rec in records {
        let mut fields = vec![rec.word.render(&labels)];
        for e in rec.gamma.canonical().entries() {
            match model {
                Model::H2 => fields.push(sig12(e.re)),
                Model::H3 => {
                    fields.push(sig12(e.re));
                    fields.push(sig12(e.im));
                }
            }
        }
        fields.push(sig12(rec.dist));
        fields.extend(angles(model, x, rec.direction.as_ref()));
        fields.extend(angles(model, x, rec.xi_image.as_ref()));
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}

pub fn orbit_csv_string(spec: &GroupSpec, x: &ModelPoint, records: &[OrbitRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_orbit_csv(&mut buf, spec, x, records)?;
    Ok(String::from_utf8(buf).expect("ascii output"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin, gamma2};
    use crate::orbit::{enumerate_ball, BallQuery};

    #[test]
    fn h2_layout() {
        let g = gamma2();
        let q = BallQuery::new(ModelPoint::i(), ModelPoint::i(), 3.0)
            .unwrap()
            .with_xi(BoundaryPoint::real(0.0));
        let recs = enumerate_ball(&g, &q).unwrap();
        let text = orbit_csv_string(&g, &q.x, &recs).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "word,a,b,c,d,dist,dir_theta,xi_image_theta");
        let first = lines.next().unwrap();
        // identity: no direction, ξ = 0 sits at visual angle π
        assert_eq!(first, "id,1,0,0,1,0,,3.14159265359");
        assert!(lines.all(|l| l.split(',').count() == 8));
    }

    #[test]
    fn h3_layout() {
        let g = builtin("schottky_h3").unwrap();
        let q = BallQuery::new(ModelPoint::j(), ModelPoint::j(), 4.0).unwrap();
        let recs = enumerate_ball(&g, &q).unwrap();
        let text = orbit_csv_string(&g, &q.x, &recs).unwrap();
        assert!(text.lines().skip(1).all(|l| l.split(',').count() == 14));
    }
}
