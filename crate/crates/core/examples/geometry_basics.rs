//! Distances, Busemann functions, visual angles and geodesic projections in
//! the half-plane and half-space models.

use hyperorbit::geometry::*;

fn main() -> hyperorbit::Result<()> {
    let i = ModelPoint::i();
    let p = ModelPoint::h2(1.0, 2.0)?;
    println!("d(i, 1+2i)          = {:.12}", dist(&i, &p));

    // the Möbius action is an isometry
    let g = MoebiusMap::real(2.0, 1.0, 1.0, 1.0)?;
    println!("d(gi, g(1+2i))      = {:.12}", dist(&g.apply(&i), &g.apply(&p)));
    println!("d(gi, i) from norms = {:.12}", dist_via_norm(&g));

    // Busemann cocycle toward ∞ and toward 0
    let q = ModelPoint::h2(0.0, 3.0)?;
    println!("β_∞(i, 3i)          = {:.12}", busemann(&BoundaryPoint::Infinity, &i, &q));
    println!("β_0(i, 3i)          = {:.12}", busemann(&BoundaryPoint::real(0.0), &i, &q));

    // visual angles at i: ∞ → 0, -1 → π/2, 0 → π, 1 → 3π/2
    for b in [BoundaryPoint::Infinity, BoundaryPoint::real(-1.0), BoundaryPoint::real(0.0), BoundaryPoint::real(1.0)] {
        println!("angle of {b:?} at i = {:.6}", visual_angle(&i, &b));
    }
    let arc = BoundaryArc::new(i, 0.3, 0.3 + std::f64::consts::FRAC_PI_2)?;
    println!("visual mass of a quarter arc at i = {}", arc.visual_mass(&i));
    println!("seen from 2i                      = {:.6}", arc.visual_mass(&ModelPoint::h2(0.0, 2.0)?));

    // projection onto the geodesic 0 → ∞ and the cocycle bound
    let axis = Geodesic::new(BoundaryPoint::real(0.0), BoundaryPoint::Infinity)?;
    println!("s(3i) on 0→∞        = {:.12}", axis.project(&q).s);
    let c = geodesic_cocycle(&g, &axis, &i);
    println!("|c(g, 0→∞)| = {:.6} ≤ d(i, gi) = {:.6}", c.abs(), dist(&i, &g.apply(&i)));

    // half-space: j and a loxodromic map
    let j = ModelPoint::j();
    let m = MoebiusMap::hyperbolic_diag(Model::H3, 1.5);
    println!("d(j, m j) in H³     = {:.12}", dist(&j, &m.apply(&j)));
    Ok(())
}
