//! JSON file formats.
//!
//! Every writer emits struct fields in declaration order and entries in the
//! library's canonical order, so equal values serialize to equal bytes.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tilesum_core::engine::{Certificate, Placement};
use tilesum_core::group::{Bindings, Flavor, Letter, SubmonoidInstance, WreathElement};
use tilesum_core::rational::{Edge, Nfa, RationalInstance, Regex};
use tilesum_core::semimodule::{
    ModuleElement, SemimoduleInstance, SubsetSumInstance, Term, Witness,
};
use tilesum_core::tm::NamedTransition;
use tilesum_core::{
    Color, EdgeId, EdgeMap, Move, Names, Orient, Point, Ring, Tile, TilingSystem, TuringMachine,
};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file types always serialize");
    s.push('\n');
    s
}

/// An integer written as a JSON number when it fits in `i64`, as a decimal
/// string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Small(i64),
    Big(String),
}

impl Num {
    pub fn value(&self) -> Result<BigInt> {
        match self {
            Num::Small(v) => Ok(BigInt::from(*v)),
            Num::Big(s) => BigInt::from_str(s).map_err(|_| anyhow!("`{s}` is not an integer")),
        }
    }
}

impl From<&BigInt> for Num {
    fn from(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(v) => Num::Small(v),
            None => Num::Big(v.to_string()),
        }
    }
}

fn parse_ring(s: &str) -> Result<Ring> {
    s.parse::<Ring>().map_err(|e| anyhow!("ring `{s}`: {e}"))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionFile {
    pub from: String,
    pub read: String,
    pub to: String,
    pub write: String,
    #[serde(rename = "move")]
    pub dir: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TmFile {
    pub states: Vec<String>,
    pub tape_alphabet: Vec<String>,
    pub input_alphabet: Vec<String>,
    pub blank: String,
    pub initial: String,
    pub accepting: String,
    pub transitions: Vec<TransitionFile>,
}

impl TmFile {
    pub fn to_machine(&self) -> Result<TuringMachine> {
        fn refs(v: &[String]) -> Vec<&str> {
            v.iter().map(String::as_str).collect()
        }
        let transitions = self
            .transitions
            .iter()
            .map(|t| {
                let dir = match t.dir.as_str() {
                    "L" => Move::L,
                    "R" => Move::R,
                    other => bail!("move must be `L` or `R`, got `{other}`"),
                };
                Ok(NamedTransition {
                    from: t.from.clone(),
                    read: t.read.clone(),
                    to: t.to.clone(),
                    write: t.write.clone(),
                    dir,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TuringMachine::from_names(
            &refs(&self.states),
            &refs(&self.tape_alphabet),
            &refs(&self.input_alphabet),
            &self.blank,
            &self.initial,
            &self.accepting,
            &transitions,
        )?)
    }

    pub fn from_machine(tm: &TuringMachine) -> Self {
        let names = tm.names();
        TmFile {
            states: tm.states().map(|q| names.state(q).to_string()).collect(),
            tape_alphabet: tm
                .tape_alphabet()
                .map(|a| names.symbol(a).to_string())
                .collect(),
            input_alphabet: tm
                .input_alphabet()
                .iter()
                .map(|&a| names.symbol(a).to_string())
                .collect(),
            blank: names.symbol(tm.blank()).into(),
            initial: names.state(tm.initial()).into(),
            accepting: names.state(tm.accepting()).into(),
            transitions: tm
                .named_transitions()
                .into_iter()
                .map(|t| TransitionFile {
                    from: t.from,
                    read: t.read,
                    to: t.to,
                    write: t.write,
                    dir: t.dir.to_string(),
                })
                .collect(),
        }
    }
}

pub fn read_machine(path: &Path) -> Result<TuringMachine> {
    read_json::<TmFile>(path)?
        .to_machine()
        .with_context(|| format!("machine in {}", path.display()))
}

pub fn color_name(c: Color, names: &Names) -> String {
    match c {
        Color::Blank0 => "c0".into(),
        Color::ArrowRight => "R-arrow".into(),
        Color::ArrowUp => "U-arrow".into(),
        Color::ArrowLeft => "L-arrow".into(),
        Color::ArrowDown => "D-arrow".into(),
        Color::ArrowDiag => "diag".into(),
        Color::TriLeft => "tri-l".into(),
        Color::TriRight => "tri-r".into(),
        Color::State(q) => format!("q:{}", names.state(q)),
        Color::Letter(a) => format!("a:{}", names.symbol(a)),
        Color::Head(q, a) => format!("qa:{},{}", names.state(q), names.symbol(a)),
    }
}

/// Resolves colour names against a name table. With `intern`, unknown
/// state and symbol names are added; otherwise they are errors.
pub struct ColorReader<'a> {
    pub names: &'a mut Names,
    pub intern: bool,
}

impl ColorReader<'_> {
    fn state(&mut self, n: &str) -> Result<tilesum_core::StateId> {
        match self.names.find_state(n) {
            Some(q) => Ok(q),
            None if self.intern && !n.is_empty() => Ok(self.names.intern_state(n)),
            None => bail!("unknown state `{n}`"),
        }
    }

    fn symbol(&mut self, n: &str) -> Result<tilesum_core::SymbolId> {
        match self.names.find_symbol(n) {
            Some(a) => Ok(a),
            None if self.intern && !n.is_empty() => Ok(self.names.intern_symbol(n)),
            None => bail!("unknown symbol `{n}`"),
        }
    }

    pub fn color(&mut self, s: &str) -> Result<Color> {
        Ok(match s {
            "c0" => Color::Blank0,
            "R-arrow" => Color::ArrowRight,
            "U-arrow" => Color::ArrowUp,
            "L-arrow" => Color::ArrowLeft,
            "D-arrow" => Color::ArrowDown,
            "diag" => Color::ArrowDiag,
            "tri-l" => Color::TriLeft,
            "tri-r" => Color::TriRight,
            _ => {
                if let Some(q) = s.strip_prefix("q:") {
                    Color::State(self.state(q)?)
                } else if let Some(a) = s.strip_prefix("a:") {
                    Color::Letter(self.symbol(a)?)
                } else if let Some((q, a)) = s.strip_prefix("qa:").and_then(|r| r.split_once(',')) {
                    Color::Head(self.state(q)?, self.symbol(a)?)
                } else {
                    bail!("unknown colour `{s}`")
                }
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TileFile {
    pub n: String,
    pub e: String,
    pub s: String,
    pub w: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl TileFile {
    pub fn from_tile(t: &Tile, names: &Names) -> Self {
        TileFile {
            n: color_name(t.north, names),
            e: color_name(t.east, names),
            s: color_name(t.south, names),
            w: color_name(t.west, names),
            name: t.label.clone(),
        }
    }

    pub fn to_tile(&self, r: &mut ColorReader) -> Result<Tile> {
        let mut t = Tile::new(
            r.color(&self.n)?,
            r.color(&self.e)?,
            r.color(&self.s)?,
            r.color(&self.w)?,
        );
        t.label = self.name.clone();
        Ok(t)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TilingFile {
    pub colors: Vec<String>,
    pub tiles: Vec<TileFile>,
}

impl TilingFile {
    pub fn from_system(ts: &TilingSystem) -> Self {
        TilingFile {
            colors: ts
                .colors()
                .iter()
                .map(|&c| color_name(c, ts.names()))
                .collect(),
            tiles: ts
                .tiles()
                .iter()
                .map(|t| TileFile::from_tile(t, ts.names()))
                .collect(),
        }
    }

    pub fn to_system(&self) -> Result<TilingSystem> {
        let mut names = Names::new();
        let mut r = ColorReader {
            names: &mut names,
            intern: true,
        };
        let colors = self
            .colors
            .iter()
            .map(|c| r.color(c))
            .collect::<Result<_>>()?;
        let tiles = self
            .tiles
            .iter()
            .map(|t| t.to_tile(&mut r))
            .collect::<Result<_>>()?;
        Ok(TilingSystem::new(names, colors, tiles)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub x: i64,
    pub y: i64,
    pub orient: String,
    pub color: String,
    pub value: Num,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeMapFile {
    pub ring: String,
    pub entries: Vec<EdgeEntry>,
}

impl EdgeMapFile {
    pub fn from_map(f: &EdgeMap, names: &Names) -> Self {
        EdgeMapFile {
            ring: f.ring().to_string(),
            entries: f
                .support()
                .map(|(e, c, v)| EdgeEntry {
                    x: e.base.x,
                    y: e.base.y,
                    orient: match e.orient {
                        Orient::H => "H".into(),
                        Orient::V => "V".into(),
                    },
                    color: color_name(c, names),
                    value: v.into(),
                })
                .collect(),
        }
    }

    pub fn to_map(&self, r: &mut ColorReader) -> Result<EdgeMap> {
        let mut f = EdgeMap::zero(parse_ring(&self.ring)?);
        for e in &self.entries {
            let edge = match e.orient.as_str() {
                "H" => EdgeId::h(e.x, e.y),
                "V" => EdgeId::v(e.x, e.y),
                other => bail!("orient must be `H` or `V`, got `{other}`"),
            };
            f.add_at(edge, r.color(&e.color)?, e.value.value()?);
        }
        Ok(f)
    }
}

/// A tile in a certificate: inline, or the name of a tile of the system.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TileRef {
    Name(String),
    Inline(TileFile),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacementFile {
    pub tile: TileRef,
    pub x: i64,
    pub y: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub m: i64,
    pub rows: i64,
    pub placements: Vec<PlacementFile>,
}

impl CertificateFile {
    pub fn from_certificate(cert: &Certificate, names: &Names) -> Self {
        CertificateFile {
            m: cert.width_m,
            rows: cert.height_n,
            placements: cert
                .sorted()
                .iter()
                .map(|p| PlacementFile {
                    tile: TileRef::Inline(TileFile::from_tile(&p.tile, names)),
                    x: p.pos.x,
                    y: p.pos.y,
                })
                .collect(),
        }
    }

    /// Named tiles are looked up in `ts` when given.
    pub fn to_certificate(
        &self,
        r: &mut ColorReader,
        ts: Option<&TilingSystem>,
    ) -> Result<Certificate> {
        let placements = self
            .placements
            .iter()
            .map(|p| {
                let tile = match &p.tile {
                    TileRef::Inline(t) => t.to_tile(r)?,
                    TileRef::Name(n) => ts
                        .and_then(|ts| ts.boundary(n))
                        .cloned()
                        .ok_or_else(|| anyhow!("unknown tile name `{n}`"))?,
                };
                Ok(Placement::new(tile, p.x, p.y))
            })
            .collect::<Result<_>>()?;
        Ok(Certificate {
            placements,
            width_m: self.m,
            height_n: self.rows,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleEntry {
    pub x: i64,
    pub y: i64,
    pub idx: usize,
    pub value: Num,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleElementFile {
    pub entries: Vec<ModuleEntry>,
}

impl ModuleElementFile {
    pub fn from_element(e: &ModuleElement) -> Self {
        ModuleElementFile {
            entries: e
                .entries()
                .map(|(p, idx, v)| ModuleEntry {
                    x: p.x,
                    y: p.y,
                    idx,
                    value: v.into(),
                })
                .collect(),
        }
    }

    pub fn to_element(&self, ring: Ring, rank: usize) -> Result<ModuleElement> {
        let entries = self
            .entries
            .iter()
            .map(|e| Ok((Point::new(e.x, e.y), e.idx, e.value.value()?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ModuleElement::from_entries(ring, rank, entries)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Semimodule,
    SubsetSum,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub ring: String,
    pub rank: usize,
    pub generators: Vec<ModuleElementFile>,
    pub target: ModuleElementFile,
    pub mode: Mode,
}

/// A parsed instance file.
pub enum Instance {
    Semimodule(SemimoduleInstance),
    SubsetSum(SubsetSumInstance),
}

impl InstanceFile {
    fn build(
        ring: Ring,
        rank: usize,
        gens: &[ModuleElement],
        target: &ModuleElement,
        mode: Mode,
    ) -> Self {
        InstanceFile {
            ring: ring.to_string(),
            rank,
            generators: gens.iter().map(ModuleElementFile::from_element).collect(),
            target: ModuleElementFile::from_element(target),
            mode,
        }
    }

    pub fn from_semimodule(inst: &SemimoduleInstance) -> Self {
        Self::build(
            inst.ring(),
            inst.rank(),
            inst.generators(),
            inst.target(),
            Mode::Semimodule,
        )
    }

    pub fn from_subset_sum(inst: &SubsetSumInstance) -> Self {
        Self::build(
            inst.ring(),
            inst.rank(),
            inst.generators(),
            inst.target(),
            Mode::SubsetSum,
        )
    }

    pub fn to_instance(&self) -> Result<Instance> {
        let ring = parse_ring(&self.ring)?;
        let gens = self
            .generators
            .iter()
            .map(|g| g.to_element(ring, self.rank))
            .collect::<Result<Vec<_>>>()?;
        let target = self.target.to_element(ring, self.rank)?;
        Ok(match self.mode {
            Mode::Semimodule => {
                Instance::Semimodule(SemimoduleInstance::new(ring, self.rank, gens, target)?)
            }
            Mode::SubsetSum => {
                Instance::SubsetSum(SubsetSumInstance::new(ring, self.rank, gens, target)?)
            }
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub x: i64,
    pub y: i64,
    pub gen: usize,
    pub coeff: Num,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub terms: Vec<TermFile>,
}

impl WitnessFile {
    pub fn from_witness(w: &Witness) -> Self {
        let mut terms = w.terms.clone();
        terms.sort();
        WitnessFile {
            terms: terms
                .iter()
                .map(|t| TermFile {
                    x: t.shift.x,
                    y: t.shift.y,
                    gen: t.gen,
                    coeff: (&t.coeff).into(),
                })
                .collect(),
        }
    }

    pub fn to_witness(&self) -> Result<Witness> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(Term {
                    shift: Point::new(t.x, t.y),
                    gen: t.gen,
                    coeff: t.coeff.value()?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Witness { terms })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlavorTag {
    Wreath,
    FreeMetabelian,
}

impl From<Flavor> for FlavorTag {
    fn from(f: Flavor) -> Self {
        match f {
            Flavor::Wreath => FlavorTag::Wreath,
            Flavor::FreeMetabelian => FlavorTag::FreeMetabelian,
        }
    }
}

impl From<FlavorTag> for Flavor {
    fn from(f: FlavorTag) -> Self {
        match f {
            FlavorTag::Wreath => Flavor::Wreath,
            FlavorTag::FreeMetabelian => Flavor::FreeMetabelian,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubmonoidFile {
    pub flavor: FlavorTag,
    pub m: usize,
    pub generators: Vec<String>,
    pub target: String,
}

impl SubmonoidFile {
    pub fn from_instance(sub: &SubmonoidInstance) -> Self {
        SubmonoidFile {
            flavor: sub.flavor.into(),
            m: sub.m,
            generators: sub.generators.iter().map(|w| w.to_string()).collect(),
            target: sub.target.to_string(),
        }
    }

    pub fn to_instance(&self) -> Result<SubmonoidInstance> {
        Ok(SubmonoidInstance {
            flavor: self.flavor.into(),
            m: self.m,
            generators: self
                .generators
                .iter()
                .map(|w| w.parse().map_err(|e| anyhow!("word `{w}`: {e}")))
                .collect::<Result<_>>()?,
            target: self
                .target
                .parse()
                .map_err(|e| anyhow!("target word: {e}"))?,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WreathElementFile {
    pub shift: [i64; 2],
    pub lamps: ModuleElementFile,
}

impl WreathElementFile {
    pub fn from_element(g: &WreathElement) -> Self {
        WreathElementFile {
            shift: [g.shift.x, g.shift.y],
            lamps: ModuleElementFile::from_element(&g.fun),
        }
    }

    pub fn to_element(&self, ring: Ring, rank: usize) -> Result<WreathElement> {
        let mut g = WreathElement::from_fun(self.lamps.to_element(ring, rank)?);
        g.shift = Point::new(self.shift[0], self.shift[1]);
        Ok(g)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalFile {
    pub ring: String,
    pub regex: String,
    pub bindings: BTreeMap<String, WreathElementFile>,
    pub target: WreathElementFile,
}

impl RationalFile {
    pub fn from_instance(r: &RationalInstance) -> Self {
        RationalFile {
            ring: r.ring.to_string(),
            regex: r.expr.to_string(),
            bindings: r
                .bindings
                .iter()
                .map(|(l, g)| (l.to_string(), WreathElementFile::from_element(g)))
                .collect(),
            target: WreathElementFile::from_element(&r.target),
        }
    }

    pub fn to_instance(&self) -> Result<RationalInstance> {
        let ring = parse_ring(&self.ring)?;
        let expr: Regex = self.regex.parse().map_err(|e| anyhow!("regex: {e}"))?;
        let mut bindings = Bindings::new();
        for (name, g) in &self.bindings {
            bindings.insert(parse_letter(name)?, g.to_element(ring, 1)?);
        }
        Ok(RationalInstance {
            ring,
            expr,
            bindings,
            target: self.target.to_element(ring, 1)?,
        })
    }
}

pub fn parse_letter(s: &str) -> Result<Letter> {
    let w: tilesum_core::group::Word = s.parse().map_err(|e| anyhow!("letter `{s}`: {e}"))?;
    match w.letters() {
        [l] => Ok(*l),
        _ => bail!("`{s}` is not a single letter"),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NfaEdgeFile {
    pub from: usize,
    pub label: Option<String>,
    pub to: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NfaFile {
    pub states: usize,
    pub initial: usize,
    pub finals: Vec<usize>,
    pub edges: Vec<NfaEdgeFile>,
}

impl NfaFile {
    pub fn from_nfa(n: &Nfa) -> Self {
        NfaFile {
            states: n.states,
            initial: n.initial,
            finals: n.finals.iter().copied().collect(),
            edges: n
                .edges
                .iter()
                .map(|e| NfaEdgeFile {
                    from: e.from,
                    label: e.label.map(|l| l.to_string()),
                    to: e.to,
                })
                .collect(),
        }
    }

    pub fn to_nfa(&self) -> Result<Nfa> {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                Ok(Edge {
                    from: e.from,
                    label: e.label.as_deref().map(parse_letter).transpose()?,
                    to: e.to,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut alphabet: Vec<Letter> = edges.iter().filter_map(|e| e.label).collect();
        alphabet.sort();
        alphabet.dedup();
        let n = Nfa {
            states: self.states,
            alphabet,
            edges,
            initial: self.initial,
            finals: self.finals.iter().copied().collect(),
        };
        n.check()?;
        Ok(n)
    }
}

/// `x0,y0,x1,y1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowArg(pub tilesum_core::Window);

impl FromStr for WindowArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v = s
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| format!("window: {e}"))?;
        match v[..] {
            [x0, y0, x1, y1] if x0 <= x1 && y0 <= y1 => {
                Ok(WindowArg(tilesum_core::Window::new(x0, y0, x1, y1)))
            }
            _ => Err("window must be x0,y0,x1,y1 with x0 <= x1 and y0 <= y1".into()),
        }
    }
}

impl fmt::Display for WindowArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.0;
        write!(f, "{},{},{},{}", w.x0, w.y0, w.x1, w.y1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tilesum_core::samples::parity_eraser;
    use tilesum_core::tiling::{compile_tiles, initial_map};

    #[test]
    fn machine_round_trip() {
        let tm = parity_eraser();
        let file = TmFile::from_machine(&tm);
        assert_eq!(file.to_machine().unwrap(), tm);
    }

    #[test]
    fn unknown_machine_fields_are_rejected() {
        let text = r#"{"states":["q"],"tape_alphabet":["_"],"input_alphabet":[],"blank":"_",
            "initial":"q","accepting":"q","transitions":[],"comment":"x"}"#;
        assert!(serde_json::from_str::<TmFile>(text).is_err());
    }

    #[test]
    fn big_values_become_strings() {
        let big = BigInt::from(i64::MAX) * 4;
        let n = Num::from(&big);
        assert_eq!(n, Num::Big(big.to_string()));
        assert_eq!(n.value().unwrap(), big);
        assert_eq!(Num::from(&BigInt::from(-3)), Num::Small(-3));
    }

    #[test]
    fn tiling_and_map_round_trip() {
        let tm = parity_eraser();
        let ts = compile_tiles(&tm);
        let back = TilingFile::from_system(&ts).to_system().unwrap();
        assert_eq!(back.tiles(), ts.tiles());
        let f0 = initial_map(&tm, &tm.word(&["a", "b"]).unwrap(), Ring::Modulo(3)).unwrap();
        let mut names = tm.names().clone();
        let mut r = ColorReader {
            names: &mut names,
            intern: false,
        };
        assert_eq!(
            EdgeMapFile::from_map(&f0, tm.names())
                .to_map(&mut r)
                .unwrap(),
            f0
        );
    }

    #[test]
    fn colour_names() {
        let mut names = Names::new();
        let mut r = ColorReader {
            names: &mut names,
            intern: true,
        };
        for s in ["c0", "R-arrow", "diag", "tri-l", "q:q0", "a:x", "qa:q0,x"] {
            let c = r.color(s).unwrap();
            assert_eq!(color_name(c, r.names), s);
        }
        let mut strict = ColorReader {
            names: &mut Names::new(),
            intern: false,
        };
        assert!(strict.color("q:nope").is_err());
        assert!(strict.color("purple").is_err());
    }

    #[test]
    fn window_argument() {
        let w: WindowArg = "0,-1,4,6".parse().unwrap();
        assert_eq!(w.to_string(), "0,-1,4,6");
        assert!("1,2,3".parse::<WindowArg>().is_err());
        assert!("4,0,0,0".parse::<WindowArg>().is_err());
    }
}
