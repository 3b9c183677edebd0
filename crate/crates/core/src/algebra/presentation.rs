use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::linalg::BracketKind;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Species {
    Boson,
    Fermion,
}

impl Species {
    pub fn symbol(self) -> char {
        match self {
            Species::Boson => 'b',
            Species::Fermion => 'f',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// `b_i^±` or `f_j^±`; `mode` starts at 1. `+` is the raising generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorLabel {
    pub species: Species,
    pub mode: usize,
    pub sign: Sign,
}

impl GeneratorLabel {
    pub const fn new(species: Species, mode: usize, sign: Sign) -> Self {
        GeneratorLabel { species, mode, sign }
    }

    pub fn b(mode: usize, sign: Sign) -> Self {
        Self::new(Species::Boson, mode, sign)
    }

    pub fn f(mode: usize, sign: Sign) -> Self {
        Self::new(Species::Fermion, mode, sign)
    }

    pub fn adjoint(self) -> Self {
        GeneratorLabel {
            sign: self.sign.flip(),
            ..self
        }
    }
}

impl fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.species.symbol(), self.mode, self.sign.symbol())
    }
}

impl Serialize for GeneratorLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for GeneratorLabel {
    type Err = Error;

    /// Parses `b1+`, `f2-`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::arg(format!("bad generator label `{s}`"));
        let mut chars = s.trim().chars();
        let species = match chars.next() {
            Some('b') => Species::Boson,
            Some('f') => Species::Fermion,
            _ => return Err(bad()),
        };
        let rest: String = chars.collect();
        let (digits, sign) = match rest.chars().last() {
            Some('+') => (&rest[..rest.len() - 1], Sign::Plus),
            Some('-') => (&rest[..rest.len() - 1], Sign::Minus),
            _ => return Err(bad()),
        };
        let mode: usize = digits.parse().map_err(|_| bad())?;
        if mode == 0 {
            return Err(bad());
        }
        Ok(GeneratorLabel { species, mode, sign })
    }
}

/// The ten algebras of the generators-and-relations table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraKind {
    Ccr,
    Car,
    Ws,
    Was,
    Pb,
    Pf,
    Pbf,
    Pfb,
    Scr,
    Sar,
}

/// The rows of the table; each algebra is defined by a subset of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationRow {
    /// `[b_i^ε, b_j^η] = ½(η−ε) δ_ij I`
    BoseBilinear,
    /// `{f_i^ε, f_j^η} = ½|η−ε| δ_ij I`
    FermiBilinear,
    /// `[b_i^ε, f_j^η] = 0`
    CrossCommute,
    /// `{b_i^ε, f_j^η} = 0`
    CrossAnticommute,
    /// `[{b_i^ξ, b_j^η}, b_k^ε] = (ε−η) δ_jk b_i^ξ + (ε−ξ) δ_ik b_j^η`
    ParaboseTrilinear,
    /// `[[f_i^ξ, f_j^η], f_k^ε] = ½(ε−η)² δ_jk f_i^ξ − ½(ε−ξ)² δ_ik f_j^η`
    ParafermiTrilinear,
    /// `[{b_i^ξ, b_j^η}, f_k^ε] = 0 = [[f_i^ξ, f_j^η], b_k^ε]`
    MixedNeutral,
    /// `[{f_k^ξ, b_l^η}, b_m^ε] = (ε−η) δ_lm f_k^ξ`, `{{b_k^ξ, f_l^η}, f_m^ε} = ½(ε−η)² δ_lm b_k^ξ`
    RelativeParabose,
    /// `[[f_k^ξ, b_l^η], b_m^ε] = (ε−η) δ_lm f_k^ξ`, `[[b_k^ξ, f_l^η], f_m^ε] = ½(ε−η)² δ_lm b_k^ξ`
    RelativeParafermi,
}

impl AlgebraKind {
    pub const ALL: [AlgebraKind; 10] = [
        AlgebraKind::Ccr,
        AlgebraKind::Car,
        AlgebraKind::Ws,
        AlgebraKind::Was,
        AlgebraKind::Pb,
        AlgebraKind::Pf,
        AlgebraKind::Pbf,
        AlgebraKind::Pfb,
        AlgebraKind::Scr,
        AlgebraKind::Sar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::Ccr => "CCR",
            AlgebraKind::Car => "CAR",
            AlgebraKind::Ws => "Ws",
            AlgebraKind::Was => "Was",
            AlgebraKind::Pb => "PB",
            AlgebraKind::Pf => "PF",
            AlgebraKind::Pbf => "PBF",
            AlgebraKind::Pfb => "PFB",
            AlgebraKind::Scr => "SCR",
            AlgebraKind::Sar => "SAR",
        }
    }

    pub fn rows(self) -> &'static [RelationRow] {
        use RelationRow::*;
        match self {
            AlgebraKind::Ccr => &[BoseBilinear],
            AlgebraKind::Car => &[FermiBilinear],
            AlgebraKind::Ws => &[BoseBilinear, FermiBilinear, CrossCommute],
            AlgebraKind::Was => &[BoseBilinear, FermiBilinear, CrossAnticommute],
            AlgebraKind::Pb => &[ParaboseTrilinear],
            AlgebraKind::Pf => &[ParafermiTrilinear],
            AlgebraKind::Pbf => &[ParaboseTrilinear, ParafermiTrilinear, MixedNeutral, RelativeParabose],
            AlgebraKind::Pfb => &[ParaboseTrilinear, ParafermiTrilinear, MixedNeutral, RelativeParafermi],
            AlgebraKind::Scr => &[CrossCommute, ParaboseTrilinear, ParafermiTrilinear],
            AlgebraKind::Sar => &[CrossAnticommute, ParaboseTrilinear, ParafermiTrilinear],
        }
    }

    pub fn uses_bosons(self) -> bool {
        !matches!(self, AlgebraKind::Car | AlgebraKind::Pf)
    }

    pub fn uses_fermions(self) -> bool {
        !matches!(self, AlgebraKind::Ccr | AlgebraKind::Pb)
    }

    pub fn is_mixed(self) -> bool {
        self.uses_bosons() && self.uses_fermions()
    }

    /// SCR and SAR take their cross relations from the W_s / W_as bilinear rows.
    pub fn cross_relations_note(self) -> Option<&'static str> {
        match self {
            AlgebraKind::Scr => Some("cross-species relations taken as [b,f] = 0 (the W_s straight row)"),
            AlgebraKind::Sar => Some("cross-species relations taken as {b,f} = 0 (the W_as straight row)"),
            _ => None,
        }
    }

    pub fn check_counts(self, m_b: usize, m_f: usize) -> Result<()> {
        if !self.uses_bosons() && m_b > 0 {
            return Err(Error::arg(format!("{self} has no boson-like generators (got {m_b} modes)")));
        }
        if !self.uses_fermions() && m_f > 0 {
            return Err(Error::arg(format!("{self} has no fermion-like generators (got {m_f} modes)")));
        }
        if self.uses_bosons() && m_b == 0 {
            return Err(Error::arg(format!("{self} needs at least one boson-like mode")));
        }
        if self.uses_fermions() && m_f == 0 {
            return Err(Error::arg(format!("{self} needs at least one fermion-like mode")));
        }
        Ok(())
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for AlgebraKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for AlgebraKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| *c != '_' && *c != '-').collect::<String>().to_ascii_lowercase();
        AlgebraKind::ALL
            .into_iter()
            .find(|k| k.name().to_ascii_lowercase() == key)
            .ok_or_else(|| {
                Error::arg(format!(
                    "unknown algebra `{s}` (expected one of CCR, CAR, Ws, Was, PB, PF, PBF, PFB, SCR, SAR)"
                ))
            })
    }
}

/// A nested bracket expression in the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Gen(GeneratorLabel),
    Bracket(BracketKind, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn bracket(kind: BracketKind, a: Expr, b: Expr) -> Expr {
        Expr::Bracket(kind, Box::new(a), Box::new(b))
    }

    pub fn comm(a: Expr, b: Expr) -> Expr {
        Self::bracket(BracketKind::Commutator, a, b)
    }

    pub fn anti(a: Expr, b: Expr) -> Expr {
        Self::bracket(BracketKind::Anticommutator, a, b)
    }

    /// Generators in left-to-right order.
    pub fn generators(&self) -> Vec<GeneratorLabel> {
        match self {
            Expr::Gen(g) => vec![*g],
            Expr::Bracket(_, a, b) => {
                let mut out = a.generators();
                out.extend(b.generators());
                out
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Gen(_) => 0,
            Expr::Bracket(_, a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Gen(g) => write!(f, "{g}"),
            Expr::Bracket(BracketKind::Commutator, a, b) => write!(f, "[{a},{b}]"),
            Expr::Bracket(BracketKind::Anticommutator, a, b) => write!(f, "{{{a},{b}}}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Identity,
    Gen(GeneratorLabel),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Identity => f.write_str("I"),
            Term::Gen(g) => write!(f, "{g}"),
        }
    }
}

/// `lhs = Σ coeff · term`; zero-coefficient terms are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub row: RelationRow,
    pub lhs: Expr,
    pub rhs: Vec<(i32, Term)>,
}

impl RelationInstance {
    fn new(row: RelationRow, lhs: Expr, rhs: Vec<(i32, Term)>) -> Self {
        let rhs = rhs.into_iter().filter(|(c, _)| *c != 0).collect();
        RelationInstance { row, lhs, rhs }
    }

    /// `lhs - rhs` in bracket notation, e.g. `[{b1+,b1-},b1+] - 2*b1+`.
    pub fn render(&self) -> String {
        let mut s = self.lhs.to_string();
        for &(c, t) in &self.rhs {
            let sign = if c > 0 { '-' } else { '+' };
            match c.unsigned_abs() {
                1 => s.push_str(&format!(" {sign} {t}")),
                m => s.push_str(&format!(" {sign} {m}*{t}")),
            }
        }
        s
    }
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn delta(a: usize, b: usize) -> i32 {
    i32::from(a == b)
}

fn modes(m: usize) -> std::ops::RangeInclusive<usize> {
    1..=m
}

/// Every instance of every row of `kind`, over modes `1..=m_b`, `1..=m_f` and
/// all sign tuples. Rows come in table order, then indices, then signs with
/// `+` before `-`.
pub fn relations(kind: AlgebraKind, m_b: usize, m_f: usize) -> Result<Vec<RelationInstance>> {
    kind.check_counts(m_b, m_f)?;
    let mut out = Vec::new();
    for &row in kind.rows() {
        push_row(row, m_b, m_f, &mut out);
    }
    Ok(out)
}

fn push_row(row: RelationRow, m_b: usize, m_f: usize, out: &mut Vec<RelationInstance>) {
    use Expr as E;
    use RelationRow::*;
    let b = |i: usize, s: Sign| E::Gen(GeneratorLabel::b(i, s));
    let f = |i: usize, s: Sign| E::Gen(GeneratorLabel::f(i, s));
    let tb = |i: usize, s: Sign| Term::Gen(GeneratorLabel::b(i, s));
    let tf = |i: usize, s: Sign| Term::Gen(GeneratorLabel::f(i, s));
    let signs2 = || Sign::BOTH.into_iter().flat_map(|a| Sign::BOTH.into_iter().map(move |c| (a, c)));
    let signs3 = || signs2().flat_map(|(a, c)| Sign::BOTH.into_iter().map(move |e| (a, c, e)));
    let sq_half = |x: i32| x * x / 2;

    match row {
        BoseBilinear => {
            for i in modes(m_b) {
                for j in modes(m_b) {
                    for (eps, eta) in signs2() {
                        let c = (eta.value() - eps.value()) / 2 * delta(i, j);
                        out.push(RelationInstance::new(row, E::comm(b(i, eps), b(j, eta)), vec![(c, Term::Identity)]));
                    }
                }
            }
        }
        FermiBilinear => {
            for i in modes(m_f) {
                for j in modes(m_f) {
                    for (eps, eta) in signs2() {
                        let c = (eta.value() - eps.value()).abs() / 2 * delta(i, j);
                        out.push(RelationInstance::new(row, E::anti(f(i, eps), f(j, eta)), vec![(c, Term::Identity)]));
                    }
                }
            }
        }
        CrossCommute | CrossAnticommute => {
            let kind = if row == CrossCommute {
                BracketKind::Commutator
            } else {
                BracketKind::Anticommutator
            };
            for i in modes(m_b) {
                for j in modes(m_f) {
                    for (eps, eta) in signs2() {
                        out.push(RelationInstance::new(row, E::bracket(kind, b(i, eps), f(j, eta)), vec![]));
                    }
                }
            }
        }
        ParaboseTrilinear => {
            for i in modes(m_b) {
                for j in modes(m_b) {
                    for k in modes(m_b) {
                        for (xi, eta, eps) in signs3() {
                            let lhs = E::comm(E::anti(b(i, xi), b(j, eta)), b(k, eps));
                            let rhs = vec![
                                ((eps.value() - eta.value()) * delta(j, k), tb(i, xi)),
                                ((eps.value() - xi.value()) * delta(i, k), tb(j, eta)),
                            ];
                            out.push(RelationInstance::new(row, lhs, rhs));
                        }
                    }
                }
            }
        }
        ParafermiTrilinear => {
            for i in modes(m_f) {
                for j in modes(m_f) {
                    for k in modes(m_f) {
                        for (xi, eta, eps) in signs3() {
                            let lhs = E::comm(E::comm(f(i, xi), f(j, eta)), f(k, eps));
                            // The left side is antisymmetric under (i,ξ) <-> (j,η), hence the minus.
                            let rhs = vec![
                                (sq_half(eps.value() - eta.value()) * delta(j, k), tf(i, xi)),
                                (-sq_half(eps.value() - xi.value()) * delta(i, k), tf(j, eta)),
                            ];
                            out.push(RelationInstance::new(row, lhs, rhs));
                        }
                    }
                }
            }
        }
        MixedNeutral => {
            for i in modes(m_b) {
                for j in modes(m_b) {
                    for k in modes(m_f) {
                        for (xi, eta, eps) in signs3() {
                            let lhs = E::comm(E::anti(b(i, xi), b(j, eta)), f(k, eps));
                            out.push(RelationInstance::new(row, lhs, vec![]));
                        }
                    }
                }
            }
            for i in modes(m_f) {
                for j in modes(m_f) {
                    for k in modes(m_b) {
                        for (xi, eta, eps) in signs3() {
                            let lhs = E::comm(E::comm(f(i, xi), f(j, eta)), b(k, eps));
                            out.push(RelationInstance::new(row, lhs, vec![]));
                        }
                    }
                }
            }
        }
        RelativeParabose | RelativeParafermi => {
            let inner = if row == RelativeParabose {
                BracketKind::Anticommutator
            } else {
                BracketKind::Commutator
            };
            for k in modes(m_f) {
                for l in modes(m_b) {
                    for m in modes(m_b) {
                        for (xi, eta, eps) in signs3() {
                            let lhs = E::comm(E::bracket(inner, f(k, xi), b(l, eta)), b(m, eps));
                            let rhs = vec![((eps.value() - eta.value()) * delta(l, m), tf(k, xi))];
                            out.push(RelationInstance::new(row, lhs, rhs));
                        }
                    }
                }
            }
            for k in modes(m_b) {
                for l in modes(m_f) {
                    for m in modes(m_f) {
                        for (xi, eta, eps) in signs3() {
                            let lhs = E::bracket(inner, E::bracket(inner, b(k, xi), f(l, eta)), f(m, eps));
                            let rhs = vec![(sq_half(eps.value() - eta.value()) * delta(l, m), tb(k, xi))];
                            out.push(RelationInstance::new(row, lhs, rhs));
                        }
                    }
                }
            }
        }
    }
}
