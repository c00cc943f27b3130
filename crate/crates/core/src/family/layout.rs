//! A-block occupancy grid of the mixture: which blocks carry `a`, which carry
//! `b` (and for which label), which are zero.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::build::{label_positions, rho0_positions};
use crate::family::labels::{LabelMap, OperatorLabel};
use crate::family::params::{FamilyParams, MAX_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Zero,
    /// Block of `ρ⁽⁰⁾` (payload `a`).
    Diagonal,
    /// Block of `ρ⁽ˡ⁾` (payload `b`).
    Label(usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct Placement {
    pub row: usize,
    pub col: usize,
    pub payload: &'static str,
    pub label: usize,
}

#[derive(Debug, Clone)]
pub struct BlockLayout {
    pub n: usize,
    pub d_a: usize,
    cells: Vec<Vec<Cell>>,
    labels: LabelMap,
}

impl BlockLayout {
    pub fn new(n: usize, d_a: usize) -> Result<Self> {
        // the B side does not influence placement; any valid d_B will do
        let params = FamilyParams::new(n, d_a, 2, 0.0)?;
        let size = params.a_dim().unwrap_or(usize::MAX);
        if size > MAX_ORDER {
            return Err(Error::Capacity {
                order: size,
                limit: MAX_ORDER,
            });
        }
        let labels = LabelMap::new(n, d_a)?;
        let mut cells = vec![vec![Cell::Zero; size]; size];
        for at in rho0_positions(&params)? {
            cells[at.row - 1][at.col - 1] = Cell::Diagonal;
        }
        for label in labels.iter() {
            for at in label_positions(&params, label)? {
                cells[at.row - 1][at.col - 1] = Cell::Label(label.l);
            }
        }
        Ok(BlockLayout {
            n,
            d_a,
            cells,
            labels,
        })
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn cell(&self, row: usize, col: usize) -> Cell {
        self.cells[row - 1][col - 1]
    }

    pub fn labels(&self) -> &[OperatorLabel] {
        self.labels.labels()
    }

    /// Nonzero blocks in row-major order.
    pub fn placements(&self) -> Vec<Placement> {
        let mut out = Vec::new();
        for (r, row) in self.cells.iter().enumerate() {
            for (c, cell) in row.iter().enumerate() {
                let (payload, label) = match *cell {
                    Cell::Zero => continue,
                    Cell::Diagonal => ("a", 0),
                    Cell::Label(l) => ("b", l),
                };
                out.push(Placement {
                    row: r + 1,
                    col: c + 1,
                    payload,
                    label,
                });
            }
        }
        out
    }

    /// `(diagonal, off_diagonal)` counts of nonzero blocks.
    pub fn placement_counts(&self) -> (usize, usize) {
        self.placements()
            .iter()
            .fold((0, 0), |(d, o), p| if p.row == p.col { (d + 1, o) } else { (d, o + 1) })
    }

    /// One line per block row: `.` for zero, `a` for `ρ⁽⁰⁾` blocks, the
    /// label number for `ρ⁽ˡ⁾` blocks, right-aligned to a common width.
    pub fn render_text(&self) -> String {
        let width = self.labels.len().to_string().len();
        let mut out = String::new();
        for row in &self.cells {
            let line: Vec<String> = row
                .iter()
                .map(|cell| {
                    let token = match cell {
                        Cell::Zero => ".".to_string(),
                        Cell::Diagonal => "a".to_string(),
                        Cell::Label(l) => l.to_string(),
                    };
                    format!("{token:>width$}")
                })
                .collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn to_report(&self) -> LayoutReport<'_> {
        let (diagonal, off_diagonal) = self.placement_counts();
        LayoutReport {
            n: self.n,
            d_a: self.d_a,
            grid_size: self.size(),
            label_count: self.labels.len(),
            diagonal_placements: diagonal,
            off_diagonal_placements: off_diagonal,
            labels: self.labels.labels(),
            blocks: self.placements(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct LayoutReport<'a> {
    pub n: usize,
    pub d_a: usize,
    pub grid_size: usize,
    pub label_count: usize,
    pub diagonal_placements: usize,
    pub off_diagonal_placements: usize,
    pub labels: &'a [OperatorLabel],
    pub blocks: Vec<Placement>,
}
