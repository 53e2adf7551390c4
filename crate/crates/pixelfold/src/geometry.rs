//! Lattice primitives: the board, point parity classes, and the dihedral
//! symmetry group of the square acting on lattice objects.
//!
//! Everything here is integer arithmetic on the (n+1)×(n+1) corner lattice
//! of an n×n board; no floating point enters the combinatorial core.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("board side must be even and >= 2, got {0}")]
    BadBoardSide(i64),
    #[error("lattice point ({x},{y}) outside [0,{n}]^2")]
    OutOfRange { x: i64, y: i64, n: u32 },
}

/// Board size and the lattice constants derived from it.
///
/// `nu` is the number of coarse-grid vertices (diamond-cell centers),
/// `arcs` the number of coarse-grid arcs, `semiperimeter` the number of
/// unit lengths of paper edge the boundary pattern consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoardSpec {
    pub n: u32,
    pub nu: u32,
    pub arcs: u32,
    pub semiperimeter: u32,
}

impl BoardSpec {
    pub fn new(n: u32) -> Result<Self, GeometryError> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(GeometryError::BadBoardSide(n as i64));
        }
        let half = n / 2;
        Ok(BoardSpec {
            n,
            nu: half * half,
            arcs: n * (half - 1),
            semiperimeter: n * n,
        })
    }

    /// Number of interior junction points (one per coarse arc).
    pub fn junctions(&self) -> u32 {
        self.n * self.n / 2 - self.n
    }

    /// Number of steps in any boundary edge pattern: one per board square.
    pub fn path_len(&self) -> usize {
        (self.n * self.n) as usize
    }
}

/// Convenience wrapper matching the operation-style API.
pub fn board_spec(n: u32) -> Result<BoardSpec, GeometryError> {
    BoardSpec::new(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: i32,
    pub y: i32,
}

impl LatticePoint {
    pub const fn new(x: i32, y: i32) -> Self {
        LatticePoint { x, y }
    }

    pub fn dist_sq(self, other: LatticePoint) -> i64 {
        let dx = (self.x - other.x) as i64;
        let dy = (self.y - other.y) as i64;
        dx * dx + dy * dy
    }
}

/// Parity class of a lattice point: odd-odd points are diamond-cell centers,
/// even-even points are exterior cell centers, mixed points carry the
/// boundary pattern (segment endpoints and junctions).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityClass {
    OddOdd,
    EvenEven,
    Mixed,
}

pub fn classify_point(p: LatticePoint, spec: &BoardSpec) -> Result<ParityClass, GeometryError> {
    let n = spec.n as i32;
    if p.x < 0 || p.y < 0 || p.x > n || p.y > n {
        return Err(GeometryError::OutOfRange { x: p.x as i64, y: p.y as i64, n: spec.n });
    }
    Ok(parity_of(p))
}

/// Parity classification without a range check (parity is defined on all of Z²).
pub fn parity_of(p: LatticePoint) -> ParityClass {
    match (p.x & 1, p.y & 1) {
        (1, 1) => ParityClass::OddOdd,
        (0, 0) => ParityClass::EvenEven,
        _ => ParityClass::Mixed,
    }
}

/// A board square identified by its minimum corner (i, j), 0 <= i, j < n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareId {
    pub i: u32,
    pub j: u32,
}

impl SquareId {
    pub const fn new(i: u32, j: u32) -> Self {
        SquareId { i, j }
    }

    /// Row-major index, y before x.
    pub fn index(self, n: u32) -> usize {
        (self.j * n + self.i) as usize
    }

    pub fn from_index(idx: usize, n: u32) -> Self {
        SquareId { i: (idx as u32) % n, j: (idx as u32) / n }
    }
}

/// One of the four diagonal step directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    NE,
    NW,
    SE,
    SW,
}

pub const ALL_DIRS: [Dir; 4] = [Dir::NE, Dir::NW, Dir::SE, Dir::SW];

impl Dir {
    pub const fn delta(self) -> (i32, i32) {
        match self {
            Dir::NE => (1, 1),
            Dir::NW => (-1, 1),
            Dir::SE => (1, -1),
            Dir::SW => (-1, -1),
        }
    }

    pub fn from_delta(dx: i32, dy: i32) -> Option<Dir> {
        match (dx, dy) {
            (1, 1) => Some(Dir::NE),
            (-1, 1) => Some(Dir::NW),
            (1, -1) => Some(Dir::SE),
            (-1, -1) => Some(Dir::SW),
            _ => None,
        }
    }

    pub const fn opposite(self) -> Dir {
        match self {
            Dir::NE => Dir::SW,
            Dir::NW => Dir::SE,
            Dir::SE => Dir::NW,
            Dir::SW => Dir::NE,
        }
    }

    pub const fn flip_x(self) -> Dir {
        match self {
            Dir::NE => Dir::NW,
            Dir::NW => Dir::NE,
            Dir::SE => Dir::SW,
            Dir::SW => Dir::SE,
        }
    }

    pub const fn flip_y(self) -> Dir {
        match self {
            Dir::NE => Dir::SE,
            Dir::SE => Dir::NE,
            Dir::NW => Dir::SW,
            Dir::SW => Dir::NW,
        }
    }

    pub fn is_perpendicular_to(self, other: Dir) -> bool {
        let (ax, ay) = self.delta();
        let (bx, by) = other.delta();
        ax * bx + ay * by == 0
    }

    /// Encoding used by canonical keys; fixed across releases.
    pub const fn code(self) -> u8 {
        match self {
            Dir::NE => 0,
            Dir::SE => 1,
            Dir::NW => 2,
            Dir::SW => 3,
        }
    }

    pub fn apply_to(self, p: LatticePoint) -> LatticePoint {
        let (dx, dy) = self.delta();
        LatticePoint::new(p.x + dx, p.y + dy)
    }
}

/// Element of the dihedral group of the square, acting about the board
/// center (n/2, n/2). Rotations are counterclockwise; `MirrorH` reflects
/// about the horizontal axis y = n/2, `MirrorD` about the main diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Identity,
    Rot90,
    Rot180,
    Rot270,
    MirrorH,
    MirrorV,
    MirrorD,
    MirrorA,
}

pub const ALL_SYMMETRIES: [Symmetry; 8] = [
    Symmetry::Identity,
    Symmetry::Rot90,
    Symmetry::Rot180,
    Symmetry::Rot270,
    Symmetry::MirrorH,
    Symmetry::MirrorV,
    Symmetry::MirrorD,
    Symmetry::MirrorA,
];

impl Symmetry {
    /// Internal (rotation count, reflection flag) form: apply the y-flip
    /// first when `f`, then `r` quarter turns.
    fn decompose(self) -> (u8, bool) {
        match self {
            Symmetry::Identity => (0, false),
            Symmetry::Rot90 => (1, false),
            Symmetry::Rot180 => (2, false),
            Symmetry::Rot270 => (3, false),
            Symmetry::MirrorH => (0, true),
            Symmetry::MirrorD => (1, true),
            Symmetry::MirrorV => (2, true),
            Symmetry::MirrorA => (3, true),
        }
    }

    fn compose_parts(r: u8, f: bool) -> Symmetry {
        match (r % 4, f) {
            (0, false) => Symmetry::Identity,
            (1, false) => Symmetry::Rot90,
            (2, false) => Symmetry::Rot180,
            (3, false) => Symmetry::Rot270,
            (0, true) => Symmetry::MirrorH,
            (1, true) => Symmetry::MirrorD,
            (2, true) => Symmetry::MirrorV,
            (3, true) => Symmetry::MirrorA,
            _ => unreachable!(),
        }
    }

    /// Group composition: `self.compose(other)` acts as `self` after `other`.
    pub fn compose(self, other: Symmetry) -> Symmetry {
        let (r1, f1) = self.decompose();
        let (r2, f2) = other.decompose();
        // sigma . rho = rho^-1 . sigma
        let r = if f1 { (r1 + 4 - r2 % 4) % 4 } else { (r1 + r2) % 4 };
        Symmetry::compose_parts(r, f1 ^ f2)
    }

    pub fn inverse(self) -> Symmetry {
        let (r, f) = self.decompose();
        if f {
            self // reflections are involutions
        } else {
            Symmetry::compose_parts((4 - r) % 4, false)
        }
    }

    pub fn is_reflection(self) -> bool {
        self.decompose().1
    }

    /// Image of a lattice point under the isometry of [0,n]².
    pub fn apply_point(self, p: LatticePoint, n: u32) -> LatticePoint {
        let n = n as i32;
        let (r, f) = self.decompose();
        let mut x = p.x;
        let mut y = p.y;
        if f {
            y = n - y;
        }
        for _ in 0..r {
            let (nx, ny) = (n - y, x);
            x = nx;
            y = ny;
        }
        LatticePoint::new(x, y)
    }

    /// Linear part applied to a step direction.
    pub fn apply_dir(self, d: Dir) -> Dir {
        let (r, f) = self.decompose();
        let (mut dx, mut dy) = d.delta();
        if f {
            dy = -dy;
        }
        for _ in 0..r {
            let (nx, ny) = (-dy, dx);
            dx = nx;
            dy = ny;
        }
        Dir::from_delta(dx, dy).expect("orthogonal image of a diagonal direction")
    }

    /// Image of a board square (squares map to squares since the action
    /// permutes cell centers).
    pub fn apply_square(self, sq: SquareId, n: u32) -> SquareId {
        // Work on doubled coordinates so the center (i+1/2, j+1/2) stays integral.
        let c = LatticePoint::new(2 * sq.i as i32 + 1, 2 * sq.j as i32 + 1);
        let img = self.apply_point(c, 2 * n);
        SquareId::new(((img.x - 1) / 2) as u32, ((img.y - 1) / 2) as u32)
    }
}

/// Apply a symmetry to a point; operation form of [`Symmetry::apply_point`].
pub fn apply_symmetry(s: Symmetry, p: LatticePoint, n: u32) -> LatticePoint {
    s.apply_point(p, n)
}
