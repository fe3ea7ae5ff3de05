//! Definability status by quantifier prefix and direction, with each
//! positive cell traced back to a built-in formula.

use std::fmt;

use serde::Serialize;

use crate::exactfield::FieldCtx;
use crate::formulas::{builtin, Block, FormulaName, Quant};
use crate::minkowski::RelKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    TauToSigma,
    TauToLambda,
    SigmaToTau,
    SigmaToLambda,
    LambdaToTau,
    LambdaToSigma,
}

impl Direction {
    pub const ALL: [Direction; 6] = [
        Direction::TauToSigma,
        Direction::TauToLambda,
        Direction::SigmaToTau,
        Direction::SigmaToLambda,
        Direction::LambdaToTau,
        Direction::LambdaToSigma,
    ];

    pub fn kinds(self) -> (RelKind, RelKind) {
        use RelKind::*;
        match self {
            Direction::TauToSigma => (Timelike, Spacelike),
            Direction::TauToLambda => (Timelike, Lightlike),
            Direction::SigmaToTau => (Spacelike, Timelike),
            Direction::SigmaToLambda => (Spacelike, Lightlike),
            Direction::LambdaToTau => (Lightlike, Timelike),
            Direction::LambdaToSigma => (Lightlike, Spacelike),
        }
    }

    pub fn label(self) -> &'static str {
        ["τ→σ", "τ→λ", "σ→τ", "σ→λ", "λ→τ", "λ→σ"][self as usize]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    /// A named defining formula with exactly this prefix shape.
    Formula(FormulaName),
    /// Definable, by padding a formula with a smaller prefix.
    Yes,
    Impossible,
    Open,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Formula(name) => write!(f, "{name}"),
            Cell::Yes => f.write_str("yes"),
            Cell::Impossible => f.write_str("impossible"),
            Cell::Open => f.write_str("open"),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixCell {
    pub direction: Direction,
    pub cell: Cell,
    /// The formula or plan behind the entry.
    pub evidence: Option<String>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixRow {
    /// Quantifier prefix, alternatives separated by `/`, `*` for any count.
    pub prefix: &'static str,
    pub cells: Vec<MatrixCell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatusMatrix {
    pub n: usize,
    pub field: FieldCtx,
    pub rows: Vec<MatrixRow>,
    pub notes: Vec<String>,
}

use Cell::{Formula as F, Impossible as X, Open as O, Yes as Y};
use FormulaName::*;

const PLANE: [(&str, [Cell; 6]); 11] = [
    ("E2/A2", [X, X, X, X, X, X]),
    ("E3", [F(EtsHat), X, F(EstHat), X, X, X]),
    ("A3", [X, F(UtlHat), X, F(UslHat), X, X]),
    ("E4", [F(Ets), X, F(Est), X, X, X]),
    ("A4", [X, F(Utl), X, F(Usl), X, X]),
    ("E1A1", [O, F(PsiTL), O, F(PsiSL), X, X]),
    ("A1E1", [F(PsiTS), O, F(PsiST), O, X, X]),
    ("E2A1/E1A2", [O, Y, O, Y, X, X]),
    ("A2E1/A1E2", [Y, O, Y, O, X, X]),
    ("E2A2", [F(WstMirror), Y, F(Wst), Y, X, X]),
    ("A2E2", [Y, F(WslMirror), Y, F(Wsl), X, X]),
];

const SPACE: [(&str, [Cell; 6]); 15] = [
    ("E2/A2", [X, X, X, X, X, X]),
    ("E3", [F(EtsHat), X, O, X, X, X]),
    ("A3", [X, F(UtlHat), X, O, X, X]),
    ("E4", [F(Ets), X, O, X, X, X]),
    ("A4", [X, F(Utl), X, O, X, X]),
    ("E*", [Y, X, O, X, X, X]),
    ("A*", [X, Y, X, O, X, X]),
    ("E1A1", [O, F(PsiTL), O, F(PsiSL), O, F(PsiLS)]),
    ("A1E1", [F(PsiTS), O, F(PsiST), O, F(PsiLT), O]),
    ("E2A1/E1A2", [O, Y, O, Y, O, Y]),
    ("A2E1/A1E2", [Y, O, Y, O, Y, O]),
    ("E2A2", [O, Y, F(Wst), Y, O, Y]),
    ("A2E2", [Y, O, Y, F(Wsl), Y, O]),
    ("E*A*", [Y, Y, Y, Y, O, Y]),
    ("A*E*", [Y, Y, Y, Y, Y, O]),
];

/// `E2A1` ↦ `[(∃, 2), (∀, 1)]`; `None` counts are unbounded.
fn pattern(alt: &str) -> Vec<(Quant, Option<usize>)> {
    let mut out = Vec::new();
    let mut chars = alt.chars().peekable();
    while let Some(c) = chars.next() {
        let q = if c == 'E' { Quant::Exists } else { Quant::Forall };
        let mut digits = String::new();
        while let Some(&d) = chars.peek() {
            if d.is_ascii_digit() || d == '*' {
                digits.push(d);
                chars.next();
            } else {
                break;
            }
        }
        out.push((q, digits.parse().ok()));
    }
    out
}

/// Whether a formula with prefix `blocks` can be padded with dummy
/// quantifiers to one of the row's alternatives.
pub fn fits(blocks: &[Block], row: &str) -> bool {
    row.split('/').any(|alt| {
        let pat = pattern(alt);
        let mut i = 0;
        blocks.iter().all(|b| {
            while i < pat.len() {
                let (q, cap) = pat[i];
                i += 1;
                if q == b.quant && cap.is_none_or(|c| b.count <= c) {
                    return true;
                }
            }
            false
        })
    })
}

/// Built-in formulas for `d` whose regime admits `n` and whose prefix
/// pads into `row`.
pub fn padding_evidence(d: Direction, row: &str, n: usize) -> Vec<FormulaName> {
    FormulaName::ALL
        .into_iter()
        .filter(|&name| {
            let nf = builtin(name);
            (nf.source, nf.target) == d.kinds()
                && nf.regime.admits_dim(n)
                && fits(&nf.claimed_prefix.blocks(), row)
        })
        .collect()
}

fn impossibility_plan(row: &str, d: Direction, n: usize) -> &'static str {
    if row == "E2/A2" {
        "no-e2-def"
    } else if matches!(d, Direction::LambdaToTau | Direction::LambdaToSigma) {
        if n == 2 {
            "swap-2d"
        } else {
            "h-inversion-no-def-from-lambda"
        }
    } else {
        "t-eps-no-exist-lambda"
    }
}

fn plan_of(name: FormulaName) -> &'static str {
    match name {
        PsiTS => "psi-ts",
        PsiTL => "psi-tl",
        PsiST => "psi-st",
        PsiSL => "psi-sl",
        PsiLS => "psi-ls",
        PsiLT => "psi-lt",
        Ets => "e-ts",
        Utl => "u-tl",
        Est => "e-st-2d",
        Usl => "u-sl-2d",
        EtsHat => "e-ts-hat",
        UtlHat => "u-tl-hat",
        EstHat => "e-st-hat-2d",
        UslHat => "u-sl-2d",
        Wsl => "w-sl",
        Wst => "w-st",
        WslMirror | WstMirror => "w-mirror-2d",
    }
}

/// The table for `n = 2`, or for `n > 2` over a Euclidean field.
pub fn status_matrix(n: usize, field: &FieldCtx) -> StatusMatrix {
    let table: &[(&str, [Cell; 6])] = if n == 2 { &PLANE } else { &SPACE };
    let rows = table
        .iter()
        .map(|(prefix, cells)| MatrixRow {
            prefix,
            cells: Direction::ALL
                .into_iter()
                .zip(cells)
                .map(|(d, &cell)| {
                    let evidence = match cell {
                        Cell::Formula(name) => Some(plan_of(name).to_string()),
                        Cell::Yes => padding_evidence(d, prefix, n).first().map(|f| format!("padded {f}")),
                        Cell::Impossible => Some(impossibility_plan(prefix, d, n).to_string()),
                        Cell::Open => None,
                    };
                    let note = (n > 2 && *prefix == "E2A2" && d == Direction::TauToSigma)
                        .then(|| "mirror of W sketched for n > 2, not machine-checked".to_string());
                    MatrixCell { direction: d, cell, evidence, note }
                })
                .collect(),
        })
        .collect();
    let mut notes = Vec::new();
    if n > 2 && field.is_rational() {
        notes.push("stated for Euclidean fields; checks over Q use canonicalizable pairs".into());
    }
    StatusMatrix { n, field: field.clone(), rows, notes }
}

impl StatusMatrix {
    /// Cells whose entry disagrees with the available formulas: a positive
    /// cell without padding evidence, or an open/impossible cell with some.
    pub fn inconsistencies(&self) -> Vec<String> {
        let mut out = Vec::new();
        for row in &self.rows {
            for c in &row.cells {
                let found = padding_evidence(c.direction, row.prefix, self.n);
                let ok = match c.cell {
                    Cell::Formula(name) => found.contains(&name),
                    Cell::Yes => !found.is_empty(),
                    Cell::Impossible | Cell::Open => found.is_empty(),
                };
                if !ok {
                    out.push(format!("{} {}: {} vs {:?}", row.prefix, c.direction.label(), c.cell, found));
                }
            }
        }
        out
    }

    pub fn cell(&self, prefix: &str, d: Direction) -> Option<Cell> {
        let row = self.rows.iter().find(|r| r.prefix == prefix)?;
        Some(row.cells[d as usize].cell)
    }

    /// Plain-text grid, one row per prefix.
    pub fn render_text(&self) -> String {
        let header = if self.n == 2 { "n=2".to_string() } else { format!("n={}", self.n) };
        let mut lines = vec![std::iter::once(format!("{header:<11}"))
            .chain(Direction::ALL.iter().map(|d| format!("{:<12}", d.label())))
            .collect::<String>()];
        for row in &self.rows {
            lines.push(
                std::iter::once(format!("{:<11}", row.prefix))
                    .chain(row.cells.iter().map(|c| format!("{:<12}", c.cell.to_string())))
                    .collect(),
            );
        }
        lines.extend(self.notes.iter().map(|n| format!("note: {n}")));
        lines.iter().map(|l| l.trim_end()).collect::<Vec<_>>().join("\n") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_consistent_with_formulas() {
        for n in [2, 3] {
            let m = status_matrix(n, &FieldCtx::Rationals);
            assert!(m.inconsistencies().is_empty(), "n={n}: {:?}", m.inconsistencies());
        }
    }

    #[test]
    fn sample_cells() {
        let m = status_matrix(2, &FieldCtx::Rationals);
        assert_eq!(m.cell("E3", Direction::TauToSigma), Some(Cell::Formula(EtsHat)));
        assert!(Direction::ALL.iter().all(|&d| m.cell("E2/A2", d) == Some(Cell::Impossible)));
        let m = status_matrix(3, &FieldCtx::Rationals);
        assert_eq!(m.cell("E3", Direction::SigmaToTau), Some(Cell::Open));
        assert_eq!(m.cell("E*A*", Direction::LambdaToTau), Some(Cell::Open));
    }

    #[test]
    fn padding() {
        let b = builtin(PsiTS).claimed_prefix.blocks();
        assert!(fits(&b, "A2E2"));
        assert!(fits(&b, "A2E1/A1E2"));
        assert!(!fits(&b, "E2A2"));
        assert!(fits(&builtin(Ets).claimed_prefix.blocks(), "E*"));
    }
}
