//! Group presentations: generators, certification, words and built-in families.

mod file;
mod pingpong;
mod region;
mod word;

use num_complex::Complex64;
use std::collections::HashSet;

pub use file::{GeneratorEntry, GroupFile};
pub use pingpong::{isometric_circle, validate_pingpong, PairMargin, PingPongCertificate, DISJOINT_MARGIN};
pub use region::Region;
pub use word::{reduced_word_count, Letter, Word};

use crate::error::{Error, Result};
use crate::geometry::{Model, MoebiusMap, ModelPoint};

#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub label: String,
    pub matrix: MoebiusMap,
}

impl Generator {
    pub fn new(label: impl Into<String>, matrix: MoebiusMap) -> Self {
        Generator { label: label.into(), matrix }
    }
}

/// Requested certification, as written in group files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificationMode {
    PingPong,
    BuiltinFree,
    Generic,
}

#[derive(Debug, Clone)]
pub enum Certification {
    PingPong(PingPongCertificate),
    /// Freeness known a priori; carries the (possibly tangent) ping-pong
    /// regions per letter used to prune enumeration.
    BuiltinFree(Vec<Region>),
    Generic,
}

impl Certification {
    pub fn mode(&self) -> CertificationMode {
        match self {
            Certification::PingPong(_) => CertificationMode::PingPong,
            Certification::BuiltinFree(_) => CertificationMode::BuiltinFree,
            Certification::Generic => CertificationMode::Generic,
        }
    }

    /// Per-letter confinement regions, when the group is certified free.
    pub fn regions(&self) -> Option<&[Region]> {
        match self {
            Certification::PingPong(c) => Some(&c.regions),
            Certification::BuiltinFree(r) => Some(r),
            Certification::Generic => None,
        }
    }
}

/// A finitely generated discrete group of isometries.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    name: String,
    model: Model,
    generators: Vec<Generator>,
    certification: Certification,
}

impl GroupSpec {
    /// Builds a spec. `PingPong` runs [`validate_pingpong`]; `BuiltinFree` is
    /// only accepted for the built-in presentations (see [`builtin`]).
    pub fn new(
        name: impl Into<String>,
        model: Model,
        generators: Vec<Generator>,
        mode: CertificationMode,
    ) -> Result<Self> {
        let name = name.into();
        check_generators(model, &generators)?;
        let certification = match mode {
            CertificationMode::PingPong => Certification::PingPong(validate_pingpong(&generators)?),
            CertificationMode::Generic => {
                pingpong::check_non_elementary(&generators).map_err(|e| match e {
                    Error::PingPong(msg) => Error::InvalidGroup(msg),
                    other => other,
                })?;
                Certification::Generic
            }
            CertificationMode::BuiltinFree => {
                let reference = builtin(&name)?;
                if reference.generators != generators {
                    return Err(Error::InvalidGroup(format!(
                        "builtin_free certification requires the built-in generators of `{name}`"
                    )));
                }
                reference.certification
            }
        };
        Ok(GroupSpec { name, model, generators, certification })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn certification(&self) -> &Certification {
        &self.certification
    }

    pub fn is_certified(&self) -> bool {
        self.certification.regions().is_some()
    }

    pub fn labels(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.label.clone()).collect()
    }

    pub fn letter_label(&self, l: Letter) -> String {
        pingpong::letter_label(&self.generators, l)
    }

    pub fn letter_matrix(&self, l: Letter) -> MoebiusMap {
        pingpong::letter_matrix(&self.generators, l)
    }

    /// All `2k` letters in code order.
    pub fn alphabet(&self) -> impl Iterator<Item = Letter> {
        (0..2 * self.generators.len()).map(Letter::from_code)
    }

    /// Parses a label such as `A`, `A^-1` or `A⁻¹`.
    pub fn parse_letter(&self, token: &str) -> Result<Letter> {
        let (base, inverse) = if let Some(b) = token.strip_suffix("^-1") {
            (b, true)
        } else if let Some(b) = token.strip_suffix("⁻¹") {
            (b, true)
        } else {
            (token, false)
        };
        self.generators
            .iter()
            .position(|g| g.label == base)
            .map(|k| Letter::new(k, inverse))
            .ok_or_else(|| Error::UnknownLabel(token.to_string()))
    }

    /// Parses and freely reduces a sequence of labels.
    pub fn reduce_word<S: AsRef<str>>(&self, tokens: &[S]) -> Result<Word> {
        let letters = tokens
            .iter()
            .map(|t| self.parse_letter(t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Word::reduce(&letters))
    }

    /// Matrix of a word, multiplied left to right with determinant
    /// renormalization after every product.
    pub fn word_to_matrix(&self, w: &Word) -> MoebiusMap {
        w.letters()
            .iter()
            .fold(MoebiusMap::identity(self.model), |acc, &l| acc.compose(&self.letter_matrix(l)))
    }

    pub fn render_word(&self, w: &Word) -> String {
        w.render(&self.labels())
    }

    /// A point strictly outside every confinement region, if the group is
    /// certified. Orbit points of such a point obey the nesting of regions.
    pub fn exterior_point(&self) -> Option<ModelPoint> {
        let regions = self.certification.regions()?;
        let mut anchors: Vec<Complex64> = vec![Complex64::new(0.0, 0.0)];
        let mut scale: f64 = 1.0;
        for r in regions {
            let (c, s) = r.anchor();
            scale = scale.max(s + c.norm());
            anchors.push(c);
        }
        // midpoints between anchors reach the gaps between disks
        let mut candidates = anchors.clone();
        for i in 0..anchors.len() {
            for j in i + 1..anchors.len() {
                candidates.push((anchors[i] + anchors[j]) / 2.0);
            }
        }
        candidates.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
        for k in -10..=12 {
            let h = scale * 2f64.powi(k);
            for z in &candidates {
                let Ok(p) = ModelPoint::new(self.model, *z, h) else { continue };
                if regions.iter().all(|r| r.excludes(&p)) {
                    return Some(p);
                }
            }
        }
        None
    }
}

fn check_generators(model: Model, generators: &[Generator]) -> Result<()> {
    if generators.is_empty() {
        return Err(Error::InvalidGroup("no generators".into()));
    }
    let mut seen = HashSet::new();
    for g in generators {
        if g.label.is_empty() || g.label.contains('.') || g.label.ends_with("^-1") || g.label == "id" {
            return Err(Error::InvalidGroup(format!("invalid generator label `{}`", g.label)));
        }
        if !seen.insert(g.label.as_str()) {
            return Err(Error::InvalidGroup(format!("duplicate generator label `{}`", g.label)));
        }
        if g.matrix.model() != model {
            return Err(Error::ModelMismatch(format!(
                "generator {} is a {} map in a {} group",
                g.label,
                g.matrix.model(),
                model
            )));
        }
    }
    Ok(())
}

/// `[[√2, 1], [1, √2]]`: hyperbolic with isometric circles of radius 1 at `∓√2`.
fn schottky_base(model: Model) -> MoebiusMap {
    let s = 2.0_f64.sqrt();
    let m = MoebiusMap::real(s, 1.0, 1.0, s).expect("unimodular");
    match model {
        Model::H2 => m,
        Model::H3 => MoebiusMap::normalized(Model::H3, m.a(), m.b(), m.c(), m.d()).expect("unimodular"),
    }
}

/// Γ(2): free on `[[1,2],[0,1]]` and `[[1,0],[2,1]]`.
pub fn gamma2() -> GroupSpec {
    let a = MoebiusMap::real(1.0, 2.0, 0.0, 1.0).expect("unimodular");
    let b = MoebiusMap::real(1.0, 0.0, 2.0, 1.0).expect("unimodular");
    let one = Complex64::new(1.0, 0.0);
    // tangent ping-pong regions: Re z ≥ 1, Re z ≤ -1 and the disks of radius
    // 1/2 at ±1/2; they touch only at the cusps -1, 0, 1, ∞
    let regions = vec![
        Region::HalfSpace { normal: one, offset: 1.0 },
        Region::HalfSpace { normal: -one, offset: 1.0 },
        Region::Ball { center: Complex64::new(0.5, 0.0), radius: 0.5 },
        Region::Ball { center: Complex64::new(-0.5, 0.0), radius: 0.5 },
    ];
    GroupSpec {
        name: "gamma2".into(),
        model: Model::H2,
        generators: vec![Generator::new("A", a), Generator::new("B", b)],
        certification: Certification::BuiltinFree(regions),
    }
}

/// Fuchsian Schottky group generated by `h₁ = [[√2,1],[1,√2]]` and its
/// conjugate `h₂ = (z ↦ z+s) ∘ h₁ ∘ (z ↦ z-s)`.
pub fn schottky_h2(s: f64) -> Result<GroupSpec> {
    let h1 = schottky_base(Model::H2);
    let t = MoebiusMap::translation(Model::H2, Complex64::new(s, 0.0));
    let t_inv = MoebiusMap::translation(Model::H2, Complex64::new(-s, 0.0));
    let h2 = t.compose(&h1).compose(&t_inv);
    GroupSpec::new(
        format!("schottky_h2({s})"),
        Model::H2,
        vec![Generator::new("h1", h1), Generator::new("h2", h2)],
        CertificationMode::PingPong,
    )
}

/// Kleinian Schottky group: `h₁ = [[√2,1],[1,√2]]` (preserving the real
/// line) and `h₂`, its conjugate by a quarter turn about `0` followed by the
/// translation `z ↦ z + i s` (preserving the line `Re z = 0`). The group keeps
/// no common circle invariant, so it is not Fuchsian.
pub fn schottky_h3(s: f64) -> Result<GroupSpec> {
    let h1 = schottky_base(Model::H3);
    let zero = Complex64::new(0.0, 0.0);
    let quarter = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    let rot = MoebiusMap::complex(quarter, zero, zero, quarter.conj()).expect("unimodular");
    let t = MoebiusMap::translation(Model::H3, Complex64::new(0.0, s));
    let conj = t.compose(&rot);
    let h2 = conj.compose(&h1).compose(&conj.inverse());
    GroupSpec::new(
        format!("schottky_h3({s})"),
        Model::H3,
        vec![Generator::new("h1", h1), Generator::new("h2", h2)],
        CertificationMode::PingPong,
    )
}

/// PSL₂(ℤ) on `S = [[0,-1],[1,0]]`, `T = [[1,1],[0,1]]`: not free (`S² = ±1`),
/// so only available uncertified.
pub fn modular() -> GroupSpec {
    let s = MoebiusMap::real(0.0, -1.0, 1.0, 0.0).expect("unimodular");
    let t = MoebiusMap::real(1.0, 1.0, 0.0, 1.0).expect("unimodular");
    GroupSpec {
        name: "modular".into(),
        model: Model::H2,
        generators: vec![Generator::new("S", s), Generator::new("T", t)],
        certification: Certification::Generic,
    }
}

pub const DEFAULT_SCHOTTKY_PARAMETER: f64 = 6.0;

/// Built-in groups by name: `gamma2`, `schottky_h2`, `schottky_h2(s)`,
/// `schottky_h3`, `schottky_h3(s)` and `modular`. `name:s` is accepted in
/// place of `name(s)`.
pub fn builtin(name: &str) -> Result<GroupSpec> {
    let name = name.trim();
    let (base, param) = match name.split_once(['(', ':']) {
        Some((b, rest)) => {
            let p = rest.trim_end_matches(')').trim();
            let v: f64 = p.parse().map_err(|_| Error::UnknownGroup(name.to_string()))?;
            (b.trim(), Some(v))
        }
        None => (name, None),
    };
    match (base, param) {
        ("gamma2", None) => Ok(gamma2()),
        ("modular", None) => Ok(modular()),
        ("schottky_h2", p) => schottky_h2(p.unwrap_or(DEFAULT_SCHOTTKY_PARAMETER)),
        ("schottky_h3", p) => schottky_h3(p.unwrap_or(DEFAULT_SCHOTTKY_PARAMETER)),
        _ => Err(Error::UnknownGroup(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::BoundaryPoint;

    #[test]
    fn gamma2_generators_are_parabolic() {
        for g in gamma2().generators() {
            assert!((g.matrix.det().re - 1.0).abs() < 1e-15);
            assert!((g.matrix.trace().re.abs() - 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn schottky_isometric_circles() {
        let spec = schottky_h2(6.0).unwrap();
        let h1 = spec.generators()[0].matrix;
        // oracle: center -d/c, radius 1/|c|
        let (c, d) = (h1.c().re, h1.d().re);
        let center = -d / c;
        let radius = 1.0 / c.abs();
        assert!((center + 2.0_f64.sqrt()).abs() < 1e-15);
        assert_eq!(radius, 1.0);
        let inv = isometric_circle(&h1.inverse()).unwrap();
        assert_eq!(inv, Region::Ball { center: Complex64::new(2.0_f64.sqrt(), 0.0), radius: 1.0 });
        let Certification::PingPong(cert) = spec.certification() else { panic!() };
        // closest pair: the two disks of h1, 2√2 apart with unit radii
        assert!((cert.min_margin - (2.0 * 2.0_f64.sqrt() - 2.0)).abs() < 1e-12);
    }

    #[test]
    fn overlapping_schottky_is_rejected() {
        assert!(matches!(schottky_h2(3.0), Err(Error::PingPong(_))));
        let Err(Error::PingPong(msg)) = schottky_h2(2.5) else { panic!("expected violation") };
        assert!(msg.contains("h1") && msg.contains("h2"), "{msg}");
    }

    #[test]
    fn rank_one_is_elementary() {
        let g = Generator::new("h", schottky_base(Model::H2));
        let Err(Error::PingPong(msg)) = validate_pingpong(&[g]) else { panic!() };
        assert!(msg.contains("elementary group"));
    }

    #[test]
    fn generator_with_zero_c_is_rejected_for_pingpong() {
        let a = MoebiusMap::real(1.0, 2.0, 0.0, 1.0).unwrap();
        let b = MoebiusMap::real(1.0, 0.0, 2.0, 1.0).unwrap();
        let gens = vec![Generator::new("A", a), Generator::new("B", b)];
        let Err(Error::PingPong(msg)) = validate_pingpong(&gens) else { panic!() };
        assert!(msg.contains("isometric circle undefined"));
    }

    #[test]
    fn builtin_names() {
        assert_eq!(builtin("gamma2").unwrap().name(), "gamma2");
        assert!(builtin("schottky_h2(6)").unwrap().is_certified());
        assert!(builtin("schottky_h2:7.5").is_ok());
        assert!(builtin("schottky_h3").unwrap().model() == Model::H3);
        assert!(matches!(builtin("nope"), Err(Error::UnknownGroup(_))));
        assert!(matches!(builtin("schottky_h2(2)"), Err(Error::PingPong(_))));
        assert!(!builtin("modular").unwrap().is_certified());
    }

    #[test]
    fn words_and_matrices() {
        let g = gamma2();
        let w = g.reduce_word(&["A", "A^-1"]).unwrap();
        assert!(w.is_empty());
        assert!(g.word_to_matrix(&w).is_identity(0.0));
        let sq = g.word_to_matrix(&g.reduce_word(&["A", "A"]).unwrap());
        assert_eq!(sq, MoebiusMap::real(1.0, 4.0, 0.0, 1.0).unwrap());
        assert!(matches!(g.reduce_word(&["C"]), Err(Error::UnknownLabel(_))));
        assert_eq!(g.parse_letter("B⁻¹").unwrap(), Letter::new(1, true));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let a = MoebiusMap::real(1.0, 2.0, 0.0, 1.0).unwrap();
        let gens = vec![Generator::new("A", a), Generator::new("A", a)];
        assert!(matches!(
            GroupSpec::new("x", Model::H2, gens, CertificationMode::Generic),
            Err(Error::InvalidGroup(_))
        ));
    }

    #[test]
    fn exterior_points_exist_for_certified_groups() {
        for spec in [gamma2(), schottky_h2(6.0).unwrap(), schottky_h3(6.0).unwrap()] {
            let p = spec.exterior_point().expect("exterior point");
            assert!(spec.certification().regions().unwrap().iter().all(|r| r.excludes(&p)));
        }
        assert!(modular().exterior_point().is_none());
    }

    #[test]
    fn schottky_h3_is_not_fuchsian() {
        let spec = schottky_h3(6.0).unwrap();
        let h2 = spec.generators()[1].matrix;
        let fixed = h2.fixed_points();
        assert!(fixed.iter().all(|p| matches!(p, BoundaryPoint::Finite(z) if z.re.abs() < 1e-12)));
    }
}
