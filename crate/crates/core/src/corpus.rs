//! Named groups, the group file format, and the standard corpus.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};

use crate::arith;
use crate::error::{Error, Result};
use crate::group::{direct_product, PermGroup};
use crate::lattice::{Lattice, LATTICE_ORDER_CAP};
use crate::perm::{parse_cycles, Permutation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupRecipe {
    Cyclic(usize),
    /// Symmetries of the `n`-gon, order `2n`.
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion8,
    DirectProduct(Box<GroupRecipe>, Box<GroupRecipe>),
    /// `Z_p ⋊ Z_d` as affine maps of `Z_p`, for `d | p − 1`.
    SemidirectCyclic(u64, u64),
    /// `Z_p ⋊ Aut(Z_p)`.
    HolomorphCyclic(u64),
    FromFile(PathBuf),
}

impl GroupRecipe {
    pub fn product(a: GroupRecipe, b: GroupRecipe) -> Self {
        GroupRecipe::DirectProduct(Box::new(a), Box::new(b))
    }

    /// Canonical name, also accepted by [`GroupRecipe::from_name`].
    pub fn name(&self) -> String {
        match self {
            GroupRecipe::Cyclic(n) => format!("Z{n}"),
            GroupRecipe::Dihedral(n) => format!("D{n}"),
            GroupRecipe::Symmetric(n) => format!("S{n}"),
            GroupRecipe::Alternating(n) => format!("A{n}"),
            GroupRecipe::Quaternion8 => "Q8".to_string(),
            GroupRecipe::DirectProduct(a, b) => format!("{}x{}", a.name(), b.name()),
            GroupRecipe::SemidirectCyclic(p, d) => format!("SD{p}_{d}"),
            GroupRecipe::HolomorphCyclic(p) => format!("Hol{p}"),
            GroupRecipe::FromFile(path) => path.display().to_string(),
        }
    }

    /// Parses names such as `Z12`, `D5`, `S4`, `A5`, `Q8`, `Hol17`,
    /// `SD13_3` and products `S3xZ2`. Case-insensitive.
    pub fn from_name(name: &str) -> Result<Self> {
        let lower = name.trim().to_ascii_lowercase();
        let parts: Vec<&str> = lower.split('x').collect();
        if parts.len() > 1 {
            let mut recipes = parts
                .iter()
                .map(|p| GroupRecipe::from_name(p))
                .collect::<Result<Vec<_>>>()?;
            let mut acc = recipes.pop().expect("at least two parts");
            while let Some(r) = recipes.pop() {
                acc = GroupRecipe::product(r, acc);
            }
            return Ok(acc);
        }
        let bad = || Error::argument(format!("unknown group name {name:?}"));
        let num = |s: &str| s.parse::<u64>().map_err(|_| bad());
        if lower == "q8" {
            return Ok(GroupRecipe::Quaternion8);
        }
        if let Some(rest) = lower.strip_prefix("hol") {
            return Ok(GroupRecipe::HolomorphCyclic(num(rest)?));
        }
        if let Some(rest) = lower.strip_prefix("sd") {
            let (p, d) = rest.split_once('_').ok_or_else(bad)?;
            return Ok(GroupRecipe::SemidirectCyclic(num(p)?, num(d)?));
        }
        let (head, rest) = lower.split_at(lower.chars().next().map_or(0, char::len_utf8));
        let n = num(rest)? as usize;
        match head {
            "z" | "c" => Ok(GroupRecipe::Cyclic(n)),
            "d" => Ok(GroupRecipe::Dihedral(n)),
            "s" => Ok(GroupRecipe::Symmetric(n)),
            "a" => Ok(GroupRecipe::Alternating(n)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GroupRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn cycle(degree: usize, points: &[usize]) -> Permutation {
    Permutation::from_cycles(degree, &[points]).expect("valid cycle")
}

fn affine(p: u64, f: impl Fn(u64) -> u64) -> Permutation {
    Permutation::from_images((0..p).map(|x| f(x) as usize).collect()).expect("affine bijection")
}

/// Smallest generator of the multiplicative group modulo the prime `p`.
fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = arith::prime_divisors(p - 1);
    (2..p)
        .find(|&r| factors.iter().all(|&q| pow_mod(r, (p - 1) / q, p) != 1))
        .expect("primitive roots exist modulo a prime")
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn quaternion8() -> PermGroup {
    // Elements ±1, ±i, ±j, ±k encoded as 2·unit + sign, acting by right multiplication.
    const TABLE: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let right_mul = |g: usize| {
        let images = (0..8)
            .map(|x| {
                let (u, s) = (x / 2, x % 2 == 1);
                let (v, neg) = TABLE[u][g];
                2 * v + usize::from(s ^ neg)
            })
            .collect();
        Permutation::from_images(images).expect("regular action")
    };
    PermGroup::new(8, vec![right_mul(1), right_mul(2)]).expect("Q8")
}

/// Builds the permutation group described by `recipe`.
pub fn build(recipe: &GroupRecipe) -> Result<PermGroup> {
    match recipe {
        GroupRecipe::Cyclic(n) => {
            if *n == 0 {
                return Err(Error::argument("cyclic group needs n ≥ 1"));
            }
            let full: Vec<usize> = (0..*n).collect();
            let gens = if *n > 1 {
                vec![cycle(*n, &full)]
            } else {
                Vec::new()
            };
            PermGroup::new(*n, gens)
        }
        GroupRecipe::Dihedral(n) => {
            if *n < 3 {
                return Err(Error::argument("dihedral group needs n ≥ 3"));
            }
            let n = *n;
            let rotation: Vec<usize> = (0..n).collect();
            let reflection = Permutation::from_images((0..n).map(|x| (n - x) % n).collect())
                .expect("reflection");
            PermGroup::new(n, vec![cycle(n, &rotation), reflection])
        }
        GroupRecipe::Symmetric(n) => {
            if *n == 0 {
                return Err(Error::argument("symmetric group needs n ≥ 1"));
            }
            let n = *n;
            if n == 1 {
                return Ok(PermGroup::trivial(1));
            }
            let full: Vec<usize> = (0..n).collect();
            PermGroup::new(n, vec![cycle(n, &full), cycle(n, &[0, 1])])
        }
        GroupRecipe::Alternating(n) => {
            if *n == 0 {
                return Err(Error::argument("alternating group needs n ≥ 1"));
            }
            let n = *n;
            let gens = (2..n).map(|i| cycle(n, &[0, 1, i])).collect();
            PermGroup::new(n, gens)
        }
        GroupRecipe::Quaternion8 => Ok(quaternion8()),
        GroupRecipe::DirectProduct(a, b) => Ok(direct_product(&build(a)?, &build(b)?)),
        GroupRecipe::SemidirectCyclic(p, d) => {
            let (p, d) = (*p, *d);
            if !arith::is_prime(p) {
                return Err(Error::argument(format!("{p} is not prime")));
            }
            if d == 0 || (p - 1) % d != 0 {
                return Err(Error::argument(format!("{d} does not divide {p} - 1")));
            }
            let a = pow_mod(primitive_root(p), (p - 1) / d, p);
            let mut gens = vec![affine(p, |x| (x + 1) % p)];
            if d > 1 {
                gens.push(affine(p, |x| a * x % p));
            }
            PermGroup::new(p as usize, gens)
        }
        GroupRecipe::HolomorphCyclic(p) => {
            if !arith::is_prime(*p) {
                return Err(Error::argument(format!("{p} is not prime")));
            }
            build(&GroupRecipe::SemidirectCyclic(*p, p - 1))
        }
        GroupRecipe::FromFile(path) => read_group_file(path),
    }
}

pub fn read_group_file(path: &Path) -> Result<PermGroup> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_group_file(&text)
}

/// Parses `degree <n>` followed by `gen <cycles>` lines with 1-based
/// points. `#` starts a comment and blank lines are ignored.
pub fn parse_group_file(text: &str) -> Result<PermGroup> {
    let mut degree: Option<(usize, usize)> = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line
            .split_once(char::is_whitespace)
            .map(|(k, r)| (k, r.trim()))
            .unwrap_or((line, ""));
        match (keyword, degree) {
            ("degree", None) => {
                let n: usize = rest
                    .parse()
                    .map_err(|_| Error::format_at(line_no, format!("bad degree {rest:?}")))?;
                if n == 0 {
                    return Err(Error::format_at(line_no, "degree must be positive"));
                }
                degree = Some((n, line_no));
            }
            ("degree", Some(_)) => {
                return Err(Error::format_at(line_no, "degree declared twice"));
            }
            ("gen", Some((n, _))) => {
                let p = parse_cycles(n, rest).map_err(|m| Error::format_at(line_no, m))?;
                gens.push(p);
            }
            ("gen", None) => {
                return Err(Error::format_at(line_no, "gen before degree"));
            }
            _ => {
                return Err(Error::format_at(
                    line_no,
                    format!("unknown directive {keyword:?}"),
                ));
            }
        }
    }
    let Some((n, line_no)) = degree else {
        return Err(Error::format_at(1, "missing degree line"));
    };
    if gens.is_empty() {
        return Err(Error::format_at(line_no, "empty generator list"));
    }
    PermGroup::new(n, gens)
}

/// Inverse of [`parse_group_file`].
pub fn serialize_group(g: &PermGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    if g.generators().is_empty() {
        out.push_str("gen ()\n");
    }
    for p in g.generators() {
        out.push_str("gen ");
        out.push_str(&p.to_cycle_string());
        out.push('\n');
    }
    out
}

/// Where a group comes from on the command line: `builtin:NAME` or `file:PATH`.
pub fn load_group_source(source: &str) -> Result<(String, PermGroup)> {
    if let Some(name) = source.strip_prefix("builtin:") {
        let recipe = GroupRecipe::from_name(name)?;
        Ok((recipe.name(), build(&recipe)?))
    } else if let Some(path) = source.strip_prefix("file:") {
        Ok((path.to_string(), read_group_file(Path::new(path))?))
    } else {
        Err(Error::argument(format!(
            "group source must be builtin:NAME or file:PATH, got {source:?}"
        )))
    }
}

pub struct CorpusEntry {
    pub name: String,
    pub group: PermGroup,
    pub provenance: String,
    lattice: OnceLock<std::result::Result<Arc<Lattice>, Error>>,
}

impl CorpusEntry {
    pub fn new(name: impl Into<String>, group: PermGroup, provenance: impl Into<String>) -> Self {
        CorpusEntry {
            name: name.into(),
            group,
            provenance: provenance.into(),
            lattice: OnceLock::new(),
        }
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    /// The subgroup lattice, built on first use and shared afterwards.
    pub fn lattice(&self) -> Result<Arc<Lattice>> {
        self.lattice
            .get_or_init(|| Lattice::new(&self.group).map(Arc::new))
            .clone()
    }
}

impl fmt::Debug for CorpusEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (order {}, {})",
            self.name,
            self.order(),
            self.provenance
        )
    }
}

#[derive(Debug, Default)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn new() -> Self {
        Corpus::default()
    }

    /// Appends an entry, rejecting duplicate names and oversized groups.
    pub fn push(&mut self, entry: CorpusEntry) -> Result<()> {
        if self.entries.iter().any(|e| e.name == entry.name) {
            return Err(Error::argument(format!(
                "duplicate corpus name {}",
                entry.name
            )));
        }
        if entry.order() > LATTICE_ORDER_CAP {
            return Err(Error::Capacity {
                what: "corpus group order",
                limit: LATTICE_ORDER_CAP,
                actual: entry.order(),
            });
        }
        self.entries.push(entry);
        Ok(())
    }

    pub fn extend(&mut self, other: Corpus) -> Result<()> {
        for e in other.entries {
            self.push(e)?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, CorpusEntry> {
        self.entries.iter()
    }

    pub fn get(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Entries of order at most `max_order`, in corpus order.
    pub fn entries_up_to(&self, max_order: u64) -> impl Iterator<Item = &CorpusEntry> {
        self.entries.iter().filter(move |e| e.order() <= max_order)
    }

    /// Builds a corpus from `builtin:NAME` / `file:PATH` sources.
    pub fn from_sources<S: AsRef<str>>(sources: &[S]) -> Result<Self> {
        let mut corpus = Corpus::new();
        for s in sources {
            let (name, group) = load_group_source(s.as_ref())?;
            corpus.push(CorpusEntry::new(name, group, "user"))?;
        }
        Ok(corpus)
    }
}

/// One entry per subgroup of `g` of order at least `min_order`, named
/// `<parent>#<id>` after the subgroup's lattice id.
pub fn harvest(g: &PermGroup, parent: &str, min_order: u64) -> Result<Corpus> {
    let lat = Lattice::new(g)?;
    let mut corpus = Corpus::new();
    for id in lat.ids() {
        if lat.order_of(id) >= min_order {
            corpus.push(CorpusEntry::new(
                format!("{parent}#{:03}", id.0),
                lat.as_group(id),
                format!("subgroup of {parent}"),
            ))?;
        }
    }
    Ok(corpus)
}

fn constructed(corpus: &mut Corpus, recipe: GroupRecipe) -> Result<()> {
    let group = build(&recipe)?;
    corpus.push(CorpusEntry::new(recipe.name(), group, "constructor"))
}

/// Direct products included in the standard corpus, all of order at most 96.
pub fn standard_products() -> Vec<GroupRecipe> {
    use GroupRecipe::*;
    let pairs: [(GroupRecipe, GroupRecipe); 22] = [
        (Cyclic(2), Cyclic(2)),
        (Cyclic(2), product(Cyclic(2), Cyclic(2))),
        (Cyclic(2), product(Cyclic(2), Cyclic(3))),
        (Cyclic(2), Symmetric(3)),
        (Cyclic(3), Symmetric(3)),
        (Cyclic(4), Symmetric(3)),
        (Cyclic(5), Symmetric(3)),
        (Symmetric(3), Symmetric(3)),
        (Cyclic(2), Alternating(4)),
        (Cyclic(3), Alternating(4)),
        (Cyclic(2), Dihedral(4)),
        (Cyclic(2), Quaternion8),
        (Cyclic(3), Quaternion8),
        (Cyclic(2), Symmetric(4)),
        (Cyclic(3), Dihedral(5)),
        (Symmetric(3), Dihedral(4)),
        (Symmetric(3), Dihedral(5)),
        (Cyclic(2), SemidirectCyclic(7, 3)),
        (Cyclic(3), SemidirectCyclic(7, 3)),
        (Cyclic(2), HolomorphCyclic(5)),
        (Cyclic(2), SemidirectCyclic(13, 3)),
        (Cyclic(4), Cyclic(4)),
    ];
    fn product(a: GroupRecipe, b: GroupRecipe) -> GroupRecipe {
        GroupRecipe::product(a, b)
    }
    pairs.into_iter().map(|(a, b)| product(a, b)).collect()
}

/// The deterministic verification corpus.
pub fn standard_corpus() -> Result<Corpus> {
    use GroupRecipe::*;
    let mut corpus = harvest(&build(&Symmetric(4))?, "S4", 1)?;
    corpus.extend(harvest(&build(&Symmetric(5))?, "S5", 4)?)?;
    constructed(&mut corpus, Alternating(5))?;

    let a6 = build(&Alternating(6))?;
    let a6_lat = Lattice::new(&a6)?;
    for p in arith::prime_divisors(a6.order()) {
        let s = a6_lat.sylow(p)?;
        corpus.push(CorpusEntry::new(
            format!("A6.Syl{p}"),
            a6_lat.as_group(s),
            "Sylow subgroup of A6",
        ))?;
    }

    constructed(&mut corpus, Quaternion8)?;
    for n in 4..=10 {
        constructed(&mut corpus, Dihedral(n))?;
    }
    for n in 1..=24 {
        constructed(&mut corpus, Cyclic(n))?;
    }
    for p in [5, 13, 17] {
        constructed(&mut corpus, HolomorphCyclic(p))?;
    }
    constructed(&mut corpus, SemidirectCyclic(13, 3))?;
    constructed(&mut corpus, SemidirectCyclic(7, 3))?;
    for recipe in standard_products() {
        let group = build(&recipe)?;
        debug_assert!(group.order() <= 96);
        corpus.push(CorpusEntry::new(recipe.name(), group, "direct product"))?;
    }
    Ok(corpus)
}

/// Process-wide shared copy of [`standard_corpus`].
pub fn shared_standard_corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| standard_corpus().expect("standard corpus builds"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_orders() {
        assert_eq!(
            build(&GroupRecipe::HolomorphCyclic(17)).unwrap().order(),
            272
        );
        let g39 = build(&GroupRecipe::SemidirectCyclic(13, 3)).unwrap();
        assert_eq!(g39.order(), 39);
        assert!(!g39.is_abelian());
        assert_eq!(build(&GroupRecipe::Alternating(5)).unwrap().order(), 60);
        let d4 = build(&GroupRecipe::Dihedral(4)).unwrap();
        assert_eq!((d4.order(), d4.exponent().unwrap()), (8, 4));
        let q8 = build(&GroupRecipe::Quaternion8).unwrap();
        assert_eq!((q8.order(), q8.exponent().unwrap()), (8, 4));
        assert_eq!(build(&GroupRecipe::Cyclic(1)).unwrap().order(), 1);
        assert!(build(&GroupRecipe::SemidirectCyclic(13, 5)).is_err());
    }

    #[test]
    fn names_round_trip() {
        for name in [
            "Z12", "D5", "S4", "A5", "Q8", "Hol17", "SD13_3", "Z2xS3", "Z2xZ2xZ3",
        ] {
            let r = GroupRecipe::from_name(name).unwrap();
            assert_eq!(r.name(), name);
        }
        assert!(GroupRecipe::from_name("K7").is_err());
    }

    #[test]
    fn file_format() {
        let s3 = parse_group_file("degree 3\ngen (1 2 3)\ngen (1 2)").unwrap();
        assert_eq!(s3.order(), 6);
        let v4 = parse_group_file("# Klein\ndegree 4\ngen (1 2)(3 4)\ngen (1 3)(2 4)\n").unwrap();
        assert_eq!(v4.order(), 4);
        let one = parse_group_file("degree 2\ngen ()").unwrap();
        assert_eq!(one.order(), 1);
        match parse_group_file("degree 3\ngen (1 2 3)\ngen (1 5)") {
            Err(Error::Format { line: Some(3), .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_group_file("degree 3\n"),
            Err(Error::Format { line: Some(1), .. })
        ));
        assert!(parse_group_file("gen (1 2)").is_err());
        assert!(parse_group_file("degree 3\ngen (1 2").is_err());
    }

    #[test]
    fn harvest_counts() {
        let s4 = build(&GroupRecipe::Symmetric(4)).unwrap();
        assert_eq!(harvest(&s4, "S4", 2).unwrap().len(), 29);
        let s3 = build(&GroupRecipe::Symmetric(3)).unwrap();
        assert_eq!(harvest(&s3, "S3", 1).unwrap().len(), 6);
    }
}
