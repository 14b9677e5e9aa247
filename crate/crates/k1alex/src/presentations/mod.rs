//! Link group presentations: Wirtinger (from braids), two-bridge,
//! Seifert-surface presentations, strong Tietze moves, cyclic covers and
//! abelianization.

mod braid;
mod cover;
mod snf;
mod tietze;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::words::{parse_word, Generators, Word, WordError};

pub use braid::{braid_components, parse_braid, wirtinger_from_braid};
pub use cover::{rs_cover, Cover};
pub use snf::{smith_normal_form, AbelianInvariants, Abelianization, SmithForm};
pub use tietze::{random_move, tietze_move, TietzeMove};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("empty braid")]
    EmptyBraid,
    #[error("braid letter {0} invalid on {1} strands")]
    BadBraidLetter(i32, usize),
    #[error("closure is not a knot ({0} components)")]
    NotAKnot(usize),
    #[error("two-bridge parameters need m > 0 and n != 0")]
    ZeroTwist,
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("presentation has no meridian")]
    NoMeridian,
    #[error("meridian must be a single generator")]
    MeridianNotGenerator,
    #[error("winding mismatch: {0}")]
    WindingMismatch(String),
    #[error("relator {0} uses an undeclared generator")]
    UndeclaredGenerator(usize),
    #[error("Seifert data has {got} words, expected {expected}")]
    SeifertLength { got: usize, expected: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Wirtinger,
    Seifert,
    Generic,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Wirtinger => "wirtinger",
            Kind::Seifert => "seifert",
            Kind::Generic => "generic",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub gens: Generators,
    pub relators: Vec<Word>,
    pub meridian: Option<Word>,
    pub longitude: Option<Word>,
    pub kind: Kind,
}

impl Presentation {
    pub fn new(gens: Generators, relators: Vec<Word>, kind: Kind) -> Result<Self, PresentationError> {
        for (i, r) in relators.iter().enumerate() {
            if r.max_gen().is_some_and(|g| g >= gens.len()) {
                return Err(PresentationError::UndeclaredGenerator(i));
            }
        }
        Ok(Presentation { gens, relators, meridian: None, longitude: None, kind })
    }

    pub fn with_meridian(mut self, w: Word) -> Self {
        self.meridian = Some(w);
        self
    }

    pub fn with_longitude(mut self, w: Word) -> Self {
        self.longitude = Some(w);
        self
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn deficiency(&self) -> i64 {
        self.gens.len() as i64 - self.relators.len() as i64
    }

    /// Index of the meridian generator.
    pub fn meridian_gen(&self) -> Result<usize, PresentationError> {
        let m = self.meridian.as_ref().ok_or(PresentationError::NoMeridian)?;
        match m.letters() {
            [l] if !l.inv => Ok(l.gen),
            _ => Err(PresentationError::MeridianNotGenerator),
        }
    }

    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        self.relators.iter().map(|r| r.exponent_sums(self.ngens())).collect()
    }

    pub fn abelianize(&self) -> Abelianization {
        Abelianization::from_relation_matrix(self.relation_matrix(), self.ngens())
    }

    /// The map to Z sending the meridian to 1, on each generator.
    /// Requires first Betti number 1.
    pub fn windings(&self) -> Result<Vec<i64>, PresentationError> {
        let ab = self.abelianize();
        if ab.invariants.free_rank != 1 {
            return Err(PresentationError::NotAKnot(ab.invariants.free_rank));
        }
        let m = self.meridian.as_ref().ok_or(PresentationError::NoMeridian)?;
        let (fm, _) = ab.coordinates(&m.exponent_sums(self.ngens()));
        let unit = fm[0];
        if unit.abs() != 1 {
            return Err(PresentationError::WindingMismatch(format!(
                "meridian has winding {unit} in H_1 = {}",
                ab.invariants
            )));
        }
        Ok((0..self.ngens())
            .map(|i| {
                let mut e = vec![0; self.ngens()];
                e[i] = 1;
                ab.coordinates(&e).0[0] * unit
            })
            .collect())
    }

    pub fn winding_of(&self, w: &Word, windings: &[i64]) -> i64 {
        w.letters().iter().map(|l| l.sign() * windings[l.gen]).sum()
    }

    /// Text form accepted by [`parse_presentation`].
    pub fn to_text(&self) -> String {
        let mut out = format!("gens: {}\n", self.gens.names().join(" "));
        for r in &self.relators {
            out += &format!("rel: {}\n", r.render(&self.gens));
        }
        if let Some(m) = &self.meridian {
            out += &format!("meridian: {}\n", m.render(&self.gens));
        }
        if let Some(l) = &self.longitude {
            out += &format!("longitude: {}\n", l.render(&self.gens));
        }
        out += &format!("kind: {}\n", self.kind);
        out
    }
}

/// Parse the line-oriented presentation format. A `braid:` line produces
/// the Wirtinger presentation of the closure.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let perr = |line: usize, msg: &str| PresentationError::Parse { line, msg: msg.to_string() };
    let mut gens: Option<Generators> = None;
    let mut rels: Vec<(usize, String)> = Vec::new();
    let (mut meridian, mut longitude, mut kind) = (None, None, None);
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, val) = line.split_once(':').ok_or_else(|| perr(line_no, "expected `key: value`"))?;
        let val = val.trim();
        match key.trim() {
            "braid" => {
                let (b, n) = parse_braid(val).map_err(|e| perr(line_no, &e.to_string()))?;
                return wirtinger_from_braid(&b, n);
            }
            "gens" => {
                gens = Some(Generators::new(val.split_whitespace()).map_err(|e| perr(line_no, &e.to_string()))?)
            }
            "rel" => rels.push((line_no, val.to_string())),
            "meridian" => meridian = Some((line_no, val.to_string())),
            "longitude" => longitude = Some((line_no, val.to_string())),
            "kind" => {
                kind = Some(match val {
                    "wirtinger" => Kind::Wirtinger,
                    "seifert" => Kind::Seifert,
                    "generic" => Kind::Generic,
                    _ => return Err(perr(line_no, "kind must be wirtinger, seifert or generic")),
                })
            }
            other => return Err(perr(line_no, &format!("unknown key `{other}`"))),
        }
    }
    let gens = gens.ok_or_else(|| perr(0, "missing `gens:` line"))?;
    let word = |(line, s): (usize, String)| parse_word(&s, &gens).map_err(|e| perr(line, &e.to_string()));
    let relators = rels.into_iter().map(word).collect::<Result<Vec<_>, _>>()?;
    let meridian = meridian.map(word).transpose()?;
    let longitude = longitude.map(word).transpose()?;
    let mut p = Presentation::new(gens.clone(), relators, kind.unwrap_or(Kind::Generic))?;
    p.meridian = meridian;
    p.longitude = longitude;
    Ok(p)
}

/// The genus-one two-bridge knot K(m, n) = S(4mn+1, 2m):
/// <x, y | w^n x w^-n y^-1>, w = (x y^-1)^m (x^-1 y)^m.
pub fn two_bridge_presentation(m: i64, n: i64) -> Result<Presentation, PresentationError> {
    if m <= 0 || n == 0 {
        return Err(PresentationError::ZeroTwist);
    }
    let gens = Generators::new(["x", "y"])?;
    let w = two_bridge_w(m);
    let r = w.pow(n).mul(&Word::gen(0)).mul(&w.pow(-n)).mul(&Word::gen_inv(1));
    Ok(Presentation::new(gens, vec![r], Kind::Wirtinger)?.with_meridian(Word::gen(0)))
}

/// w = (x y^-1)^m (x^-1 y)^m over generators x = 0, y = 1.
pub fn two_bridge_w(m: i64) -> Word {
    let a = Word::from_powers(&[(0, 1), (1, -1)]).pow(m);
    let b = Word::from_powers(&[(0, -1), (1, 1)]).pow(m);
    a.mul(&b)
}

/// Push-off words of a genus-g Seifert surface: y_i and z_i are words in
/// the 2g free generators of the surface complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertData {
    pub genus: usize,
    pub y: Vec<Word>,
    pub z: Vec<Word>,
}

impl SeifertData {
    pub fn new(genus: usize, y: Vec<Word>, z: Vec<Word>) -> Result<Self, PresentationError> {
        for v in [&y, &z] {
            if v.len() != 2 * genus {
                return Err(PresentationError::SeifertLength { got: v.len(), expected: 2 * genus });
            }
            if let Some(i) = v.iter().position(|w| w.max_gen().is_some_and(|g| g >= 2 * genus)) {
                return Err(PresentationError::UndeclaredGenerator(i));
            }
        }
        Ok(SeifertData { genus, y, z })
    }

    pub fn unknot() -> Self {
        SeifertData { genus: 0, y: vec![], z: vec![] }
    }

    /// Fibered data: y_i = x_i and z_i = phi(x_i) for a monodromy phi.
    pub fn from_monodromy(images: Vec<Word>) -> Result<Self, PresentationError> {
        let g = images.len() / 2;
        let y = (0..images.len()).map(Word::gen).collect();
        Self::new(g, y, images)
    }

    /// Fiber surface of the trefoil: monodromy a -> b, b -> b a^-1.
    pub fn trefoil() -> Self {
        Self::from_monodromy(vec![Word::gen(1), Word::from_powers(&[(1, 1), (0, -1)])]).unwrap()
    }

    /// Fiber surface of the figure-eight: monodromy a -> a b, b -> b a b.
    pub fn figure_eight() -> Self {
        Self::from_monodromy(vec![
            Word::from_powers(&[(0, 1), (1, 1)]),
            Word::from_powers(&[(1, 1), (0, 1), (1, 1)]),
        ])
        .unwrap()
    }
}

/// <x_1..x_2g, m | m^-1 y_i m z_i^-1>.
pub fn seifert_presentation(data: &SeifertData) -> Presentation {
    let g2 = 2 * data.genus;
    let mut names: Vec<String> = (1..=g2).map(|i| format!("x{i}")).collect();
    names.push("m".into());
    let gens = Generators::new(names).expect("distinct generator names");
    let m = Word::gen(g2);
    let relators = data
        .y
        .iter()
        .zip(&data.z)
        .map(|(y, z)| m.inverse().mul(y).mul(&m).mul(&z.inverse()))
        .collect();
    Presentation::new(gens, relators, Kind::Seifert)
        .expect("Seifert words stay within declared generators")
        .with_meridian(m)
}
