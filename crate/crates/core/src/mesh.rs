//! Structured two-subdomain quadrilateral meshes.
//!
//! Cells are axis-aligned rectangles. Subdomain 1 (the solid) is stored
//! first, subdomain 2 (the fluid) second, each in row-major order with the
//! x index running fastest. Every face is stored once with a unit normal
//! pointing out of its `left` cell; interface faces always have the solid
//! cell on the left so that their normal points into the fluid.

use crate::error::{Error, Result};

/// The two subdomains of the coupled problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subdomain {
    /// Subdomain 1, governed by linear elasticity.
    Solid,
    /// Subdomain 2, governed by the compressible Euler equations.
    Fluid,
}

impl Subdomain {
    pub const ALL: [Subdomain; 2] = [Subdomain::Solid, Subdomain::Fluid];

    /// Zero-based index (0 for subdomain 1, 1 for subdomain 2).
    pub fn index(self) -> usize {
        match self {
            Subdomain::Solid => 0,
            Subdomain::Fluid => 1,
        }
    }

    /// One-based label used in file headers.
    pub fn label(self) -> usize {
        self.index() + 1
    }
}

/// Axis-aligned rectangle `[x_min, x_max] x [y_min, y_max]` in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Rect {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Self {
        Rect {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite || self.width() <= 0.0 || self.height() <= 0.0 {
            return Err(Error::Config(format!("degenerate rectangle {self:?}")));
        }
        Ok(())
    }

    fn interiors_overlap(&self, other: &Rect) -> bool {
        self.x_min < other.x_max
            && other.x_min < self.x_max
            && self.y_min < other.y_max
            && other.y_min < self.y_max
    }
}

/// Side of a reference cell; West/East are `xi = -1/+1`, South/North are `eta = -1/+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    West,
    East,
    South,
    North,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::West, Side::East, Side::South, Side::North];

    pub fn index(self) -> usize {
        match self {
            Side::West => 0,
            Side::East => 1,
            Side::South => 2,
            Side::North => 3,
        }
    }

    pub fn outward_normal(self) -> [f64; 2] {
        match self {
            Side::West => [-1.0, 0.0],
            Side::East => [1.0, 0.0],
            Side::South => [0.0, -1.0],
            Side::North => [0.0, 1.0],
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::West => Side::East,
            Side::East => Side::West,
            Side::South => Side::North,
            Side::North => Side::South,
        }
    }

    /// Reference coordinates of the face point with tangential parameter `s`.
    pub fn reference_point(self, s: f64) -> [f64; 2] {
        match self {
            Side::West => [-1.0, s],
            Side::East => [1.0, s],
            Side::South => [s, -1.0],
            Side::North => [s, 1.0],
        }
    }

    /// True for the two sides normal to the x axis.
    pub fn is_vertical(self) -> bool {
        matches!(self, Side::West | Side::East)
    }
}

#[derive(Debug, Clone)]
pub struct Cell {
    pub center: [f64; 2],
    pub half_widths: [f64; 2],
    pub subdomain: Subdomain,
    /// Index within the subdomain block.
    pub local: usize,
    /// Face index per [`Side`].
    pub faces: [usize; 4],
}

impl Cell {
    pub fn area(&self) -> f64 {
        4.0 * self.half_widths[0] * self.half_widths[1]
    }

    /// Maps physical coordinates to the reference square `[-1, 1]^2`.
    pub fn to_reference(&self, x: [f64; 2]) -> [f64; 2] {
        [
            (x[0] - self.center[0]) / self.half_widths[0],
            (x[1] - self.center[1]) / self.half_widths[1],
        ]
    }

    pub fn to_physical(&self, r: [f64; 2]) -> [f64; 2] {
        [
            self.center[0] + r[0] * self.half_widths[0],
            self.center[1] + r[1] * self.half_widths[1],
        ]
    }

    pub fn contains(&self, x: [f64; 2]) -> bool {
        let r = self.to_reference(x);
        let tol = 1e-12;
        r[0].abs() <= 1.0 + tol && r[1].abs() <= 1.0 + tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceKind {
    /// Both cells in the same subdomain (including periodic wrap-around).
    Interior,
    /// Solid cell on the left, fluid cell on the right.
    Interface,
    /// Outer boundary; only the left cell exists.
    Boundary,
}

#[derive(Debug, Clone)]
pub struct Face {
    pub left: usize,
    pub left_side: Side,
    pub right: Option<(usize, Side)>,
    /// Unit normal pointing out of the left cell.
    pub normal: [f64; 2],
    pub length: f64,
    pub kind: FaceKind,
}

/// Structured grid metadata of one subdomain.
#[derive(Debug, Clone)]
pub struct Grid {
    pub rect: Rect,
    pub nx: usize,
    pub ny: usize,
    /// Global index of the first cell of this subdomain.
    pub offset: usize,
}

impl Grid {
    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn cell_index(&self, i: usize, j: usize) -> usize {
        self.offset + j * self.nx + i
    }
}

#[derive(Debug, Clone)]
pub struct Mesh {
    pub cells: Vec<Cell>,
    pub faces: Vec<Face>,
    pub interface_faces: Vec<usize>,
    pub grids: [Option<Grid>; 2],
}

/// Periodicity flags of a single-subdomain mesh, per direction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Periodicity {
    pub x: bool,
    pub y: bool,
}

struct Builder {
    cells: Vec<Cell>,
    faces: Vec<Face>,
    interface_faces: Vec<usize>,
}

impl Builder {
    fn add_grid(&mut self, sub: Subdomain, rect: Rect, nx: usize, ny: usize) -> Grid {
        let offset = self.cells.len();
        let hx = 0.5 * rect.width() / nx as f64;
        let hy = 0.5 * rect.height() / ny as f64;
        for j in 0..ny {
            for i in 0..nx {
                self.cells.push(Cell {
                    center: [
                        rect.x_min + (2 * i + 1) as f64 * hx,
                        rect.y_min + (2 * j + 1) as f64 * hy,
                    ],
                    half_widths: [hx, hy],
                    subdomain: sub,
                    local: j * nx + i,
                    faces: [usize::MAX; 4],
                });
            }
        }
        Grid {
            rect,
            nx,
            ny,
            offset,
        }
    }

    fn push_face(&mut self, left: usize, left_side: Side, right: Option<(usize, Side)>, kind: FaceKind) {
        let hw = self.cells[left].half_widths;
        let length = if left_side.is_vertical() {
            2.0 * hw[1]
        } else {
            2.0 * hw[0]
        };
        let idx = self.faces.len();
        self.cells[left].faces[left_side.index()] = idx;
        if let Some((r, rs)) = right {
            self.cells[r].faces[rs.index()] = idx;
        }
        if kind == FaceKind::Interface {
            self.interface_faces.push(idx);
        }
        self.faces.push(Face {
            left,
            left_side,
            right,
            normal: left_side.outward_normal(),
            length,
            kind,
        });
    }

    /// Interior faces of one grid; sides listed in `skip` (or made periodic) get no boundary face.
    fn add_grid_faces(&mut self, g: &Grid, periodic: Periodicity, skip: Option<Side>) {
        let (nx, ny) = (g.nx, g.ny);
        for j in 0..ny {
            for i in 0..nx {
                let c = g.cell_index(i, j);
                if i + 1 < nx {
                    self.push_face(c, Side::East, Some((g.cell_index(i + 1, j), Side::West)), FaceKind::Interior);
                } else if periodic.x {
                    self.push_face(c, Side::East, Some((g.cell_index(0, j), Side::West)), FaceKind::Interior);
                } else if skip != Some(Side::East) {
                    self.push_face(c, Side::East, None, FaceKind::Boundary);
                }
                if i == 0 && !periodic.x && skip != Some(Side::West) {
                    self.push_face(c, Side::West, None, FaceKind::Boundary);
                }
                if j + 1 < ny {
                    self.push_face(c, Side::North, Some((g.cell_index(i, j + 1), Side::South)), FaceKind::Interior);
                } else if periodic.y {
                    self.push_face(c, Side::North, Some((g.cell_index(i, 0), Side::South)), FaceKind::Interior);
                } else if skip != Some(Side::North) {
                    self.push_face(c, Side::North, None, FaceKind::Boundary);
                }
                if j == 0 && !periodic.y && skip != Some(Side::South) {
                    self.push_face(c, Side::South, None, FaceKind::Boundary);
                }
            }
        }
    }

    fn finish(self, grids: [Option<Grid>; 2]) -> Mesh {
        debug_assert!(self.cells.iter().all(|c| c.faces.iter().all(|&f| f != usize::MAX)));
        Mesh {
            cells: self.cells,
            faces: self.faces,
            interface_faces: self.interface_faces,
            grids,
        }
    }
}

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-12 * scale
}

impl Mesh {
    /// Builds the coupled mesh: `solid` over `solid_cells = (nx1, ny1)` and
    /// `fluid` over `fluid_cells = (nx2, ny2)`. The rectangles must share one
    /// full edge, which becomes the interface, and that edge must be split
    /// identically on both sides. With `periodic_tangential` both subdomains
    /// are periodic along the interface direction.
    pub fn build(
        solid: Rect,
        fluid: Rect,
        solid_cells: (usize, usize),
        fluid_cells: (usize, usize),
        periodic_tangential: bool,
    ) -> Result<Mesh> {
        solid.validate()?;
        fluid.validate()?;
        if solid_cells.0 == 0 || solid_cells.1 == 0 || fluid_cells.0 == 0 || fluid_cells.1 == 0 {
            return Err(Error::Config("cell counts must be positive".into()));
        }
        if solid.interiors_overlap(&fluid) {
            return Err(Error::Config("solid and fluid domains overlap".into()));
        }
        let scale = [solid.width(), solid.height(), fluid.width(), fluid.height()]
            .into_iter()
            .fold(0.0, f64::max)
            .max(solid.x_min.abs().max(solid.y_min.abs()));
        let same_y = close(solid.y_min, fluid.y_min, scale) && close(solid.y_max, fluid.y_max, scale);
        let same_x = close(solid.x_min, fluid.x_min, scale) && close(solid.x_max, fluid.x_max, scale);

        // Side of the solid grid lying on the interface.
        let solid_side = if same_y && close(solid.x_max, fluid.x_min, scale) {
            Side::East
        } else if same_y && close(solid.x_min, fluid.x_max, scale) {
            Side::West
        } else if same_x && close(solid.y_max, fluid.y_min, scale) {
            Side::North
        } else if same_x && close(solid.y_min, fluid.y_max, scale) {
            Side::South
        } else {
            return Err(Error::Config(
                "solid and fluid domains must share exactly one full edge".into(),
            ));
        };
        if solid_side.is_vertical() && solid_cells.1 != fluid_cells.1 {
            return Err(Error::Config(format!(
                "non-conforming interface: {} solid vs {} fluid cells along the interface",
                solid_cells.1, fluid_cells.1
            )));
        }
        if !solid_side.is_vertical() && solid_cells.0 != fluid_cells.0 {
            return Err(Error::Config(format!(
                "non-conforming interface: {} solid vs {} fluid cells along the interface",
                solid_cells.0, fluid_cells.0
            )));
        }

        let mut b = Builder {
            cells: Vec::new(),
            faces: Vec::new(),
            interface_faces: Vec::new(),
        };
        let gs = b.add_grid(Subdomain::Solid, solid, solid_cells.0, solid_cells.1);
        let gf = b.add_grid(Subdomain::Fluid, fluid, fluid_cells.0, fluid_cells.1);
        let periodic = Periodicity {
            x: periodic_tangential && !solid_side.is_vertical(),
            y: periodic_tangential && solid_side.is_vertical(),
        };
        b.add_grid_faces(&gs, periodic, Some(solid_side));
        b.add_grid_faces(&gf, periodic, Some(solid_side.opposite()));

        let fluid_side = solid_side.opposite();
        let n_along = if solid_side.is_vertical() { gs.ny } else { gs.nx };
        for k in 0..n_along {
            let (s, f) = match solid_side {
                Side::East => (gs.cell_index(gs.nx - 1, k), gf.cell_index(0, k)),
                Side::West => (gs.cell_index(0, k), gf.cell_index(gf.nx - 1, k)),
                Side::North => (gs.cell_index(k, gs.ny - 1), gf.cell_index(k, 0)),
                Side::South => (gs.cell_index(k, 0), gf.cell_index(k, gf.ny - 1)),
            };
            b.push_face(s, solid_side, Some((f, fluid_side)), FaceKind::Interface);
        }
        Ok(b.finish([Some(gs), Some(gf)]))
    }

    /// Builds an uncoupled mesh covering `rect` with cells of one subdomain.
    pub fn single(sub: Subdomain, rect: Rect, nx: usize, ny: usize, periodic: Periodicity) -> Result<Mesh> {
        rect.validate()?;
        if nx == 0 || ny == 0 {
            return Err(Error::Config("cell counts must be positive".into()));
        }
        let mut b = Builder {
            cells: Vec::new(),
            faces: Vec::new(),
            interface_faces: Vec::new(),
        };
        let g = b.add_grid(sub, rect, nx, ny);
        b.add_grid_faces(&g, periodic, None);
        let mut grids = [None, None];
        grids[sub.index()] = Some(g);
        Ok(b.finish(grids))
    }

    /// Number of cells in a subdomain.
    pub fn count(&self, sub: Subdomain) -> usize {
        self.grids[sub.index()].as_ref().map_or(0, Grid::len)
    }

    pub fn grid(&self, sub: Subdomain) -> Option<&Grid> {
        self.grids[sub.index()].as_ref()
    }

    /// Global index of the `local`-th cell of `sub`.
    pub fn global_index(&self, sub: Subdomain, local: usize) -> usize {
        self.grids[sub.index()].as_ref().map_or(0, |g| g.offset) + local
    }

    /// Euclidean diagonal of a cell.
    pub fn cell_diameter(&self, cell: usize) -> f64 {
        let h = self.cells[cell].half_widths;
        2.0 * (h[0] * h[0] + h[1] * h[1]).sqrt()
    }

    /// Same-subdomain neighbor across `side`, if any.
    pub fn neighbor(&self, cell: usize, side: Side) -> Option<usize> {
        let f = &self.faces[self.cells[cell].faces[side.index()]];
        if f.kind != FaceKind::Interior {
            return None;
        }
        if f.left == cell && f.left_side == side {
            f.right.map(|(r, _)| r)
        } else {
            Some(f.left)
        }
    }

    /// Cell containing `x` (the lowest index wins on shared edges).
    pub fn locate(&self, x: [f64; 2]) -> Option<usize> {
        for g in self.grids.iter().flatten() {
            let r = &g.rect;
            if x[0] < r.x_min || x[0] > r.x_max || x[1] < r.y_min || x[1] > r.y_max {
                continue;
            }
            let i = (((x[0] - r.x_min) / r.width() * g.nx as f64) as usize).min(g.nx - 1);
            let j = (((x[1] - r.y_min) / r.height() * g.ny as f64) as usize).min(g.ny - 1);
            return Some(g.cell_index(i, j));
        }
        None
    }

    /// Physical position of the face point with tangential parameter `s` in `[-1, 1]`,
    /// seen from the left cell.
    pub fn face_point(&self, face: usize, s: f64) -> [f64; 2] {
        let f = &self.faces[face];
        self.cells[f.left].to_physical(f.left_side.reference_point(s))
    }
}
