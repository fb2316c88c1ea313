//! Builtin groups, ping-pong certificates and group files.

use hyperorbit::geometry::{Model, MoebiusMap};
use hyperorbit::group::*;

fn main() -> hyperorbit::Result<()> {
    for name in ["gamma2", "schottky_h2", "schottky_h2(8)", "schottky_h3", "modular"] {
        let spec = builtin(name)?;
        println!("{:16} model {} rank {} certification {:?}", spec.name(), spec.model(), spec.rank(), spec.certification().mode());
        if let Certification::PingPong(cert) = spec.certification() {
            for m in &cert.margins {
                println!("    gap({}, {}) = {:.6}", m.first, m.second, m.gap);
            }
        }
    }

    // words reduce and evaluate to matrices
    let spec = gamma2();
    let w = spec.reduce_word(&["A", "B", "B^-1", "A"])?;
    println!("A B B^-1 A reduces to {}", spec.render_word(&w));
    println!("matrix {:?}", spec.word_to_matrix(&w).entries().map(|z| z.re));

    // a group file round trip, then a failing certificate
    let dir = std::env::temp_dir().join("hyperorbit-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("schottky.json");
    GroupFile::write(&builtin("schottky_h2")?, &path)?;
    println!("wrote {}", path.display());
    let back = GroupFile::read(&path)?;
    println!("read back {} with {} generators", back.name(), back.rank());

    let g = MoebiusMap::real(2.0, 0.0, 0.0, 0.5)?;
    let h = MoebiusMap::real(1.0, 0.5, 0.0, 1.0)?;
    let overlapping = GroupSpec::new(
        "overlapping",
        Model::H2,
        vec![Generator::new("g", g), Generator::new("h", h)],
        CertificationMode::PingPong,
    );
    match overlapping {
        Ok(_) => println!("unexpectedly certified"),
        Err(e) => println!("refused: {e}"),
    }
    Ok(())
}
