use std::fmt::Write as _;

use crate::sphere::{glue_table, FaceId, SphericalMosaic};
use crate::tiles::{strand_pairs, Role, Side, Tile};

const CELL: f64 = 40.0;
const MARGIN: f64 = 24.0;
const GAP: f64 = 0.18;

const PALETTE: [&str; 7] = ["#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Svg,
    Ascii,
}

/// Face position in the cross-shaped net, in face units.
fn net_slot(face: FaceId) -> (usize, usize) {
    match face {
        FaceId::U => (1, 0),
        FaceId::L => (0, 1),
        FaceId::F => (1, 1),
        FaceId::R => (2, 1),
        FaceId::B => (3, 1),
        FaceId::D => (1, 2),
    }
}

/// Face sides that meet their partner edge directly on the flat net.
fn is_net_internal(a: FaceId, sa: Side, b: FaceId, sb: Side) -> bool {
    let (ax, ay) = net_slot(a);
    let (bx, by) = net_slot(b);
    let step = |s: Side| match s {
        Side::Top => (0, -1),
        Side::Right => (1, 0),
        Side::Bottom => (0, 1),
        Side::Left => (-1, 0),
    };
    let (dx, dy) = step(sa);
    let touching = ax as i64 + dx == bx as i64 && ay as i64 + dy == by as i64;
    touching && sb == sa.opposite()
}

pub type FaceSide = (FaceId, Side);

/// The seven cube-edge identifications that the net splits apart, each as
/// its two face sides and the reversal flag.
pub fn boundary_pairs() -> Vec<(FaceSide, FaceSide, bool)> {
    let mut out = Vec::new();
    for (face, side, g) in glue_table().entries() {
        let key = (face.index(), side.index());
        if key < (g.face.index(), g.side.index()) && !is_net_internal(face, side, g.face, g.side) {
            out.push(((face, side), (g.face, g.side), g.reversed));
        }
    }
    out
}

pub fn render(m: &SphericalMosaic, style: Style) -> String {
    match style {
        Style::Svg => render_svg(m),
        Style::Ascii => render_ascii(m),
    }
}

fn face_origin(face: FaceId, n: usize) -> (f64, f64) {
    let (sx, sy) = net_slot(face);
    let w = n as f64 * CELL;
    (MARGIN + sx as f64 * w, MARGIN + sy as f64 * w)
}

fn side_midpoint(x: f64, y: f64, side: Side) -> (f64, f64) {
    let h = CELL / 2.0;
    match side {
        Side::Top => (x + h, y),
        Side::Right => (x + CELL, y + h),
        Side::Bottom => (x + h, y + CELL),
        Side::Left => (x, y + h),
    }
}

fn side_segment(face: FaceId, side: Side, n: usize) -> ((f64, f64), (f64, f64)) {
    let (x, y) = face_origin(face, n);
    let w = n as f64 * CELL;
    match side {
        Side::Top => ((x, y), (x + w, y)),
        Side::Right => ((x + w, y), (x + w, y + w)),
        Side::Bottom => ((x, y + w), (x + w, y + w)),
        Side::Left => ((x, y), (x, y + w)),
    }
}

fn strand_paths(x: f64, y: f64, a: Side, b: Side, role: Role) -> Vec<String> {
    let pa = side_midpoint(x, y, a);
    let pb = side_midpoint(x, y, b);
    if a == b.opposite() {
        if role == Role::Under {
            let t = 0.5 - GAP;
            let q1 = (pa.0 + (pb.0 - pa.0) * t, pa.1 + (pb.1 - pa.1) * t);
            let q2 = (pb.0 + (pa.0 - pb.0) * t, pb.1 + (pa.1 - pb.1) * t);
            return vec![
                format!("M{} {} L{} {}", pa.0, pa.1, q1.0, q1.1),
                format!("M{} {} L{} {}", q2.0, q2.1, pb.0, pb.1),
            ];
        }
        return vec![format!("M{} {} L{} {}", pa.0, pa.1, pb.0, pb.1)];
    }
    let corner = (
        if a == Side::Right || b == Side::Right { x + CELL } else { x },
        if a == Side::Bottom || b == Side::Bottom { y + CELL } else { y },
    );
    let cross = (pa.0 - corner.0) * (pb.1 - corner.1) - (pa.1 - corner.1) * (pb.0 - corner.0);
    let sweep = u8::from(cross > 0.0);
    let r = CELL / 2.0;
    vec![format!("M{} {} A{r} {r} 0 0 {sweep} {} {}", pa.0, pa.1, pb.0, pb.1)]
}

/// SVG 1.1 drawing of the net. Every strand segment is one
/// `<path class="strand">`; each identified boundary side is one
/// `<line class="glue">`, its partner sharing colour and `data-pair`.
pub fn render_svg(m: &SphericalMosaic) -> String {
    let n = m.n();
    let w = n as f64 * CELL;
    let width = 4.0 * w + 2.0 * MARGIN;
    let height = 3.0 * w + 2.0 * MARGIN;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        s,
        r##"<g class="grid" fill="none" stroke="#bbbbbb" stroke-width="0.5">"##
    );
    for face in FaceId::ALL {
        let (x, y) = face_origin(face, n);
        for i in 1..n {
            let d = i as f64 * CELL;
            let _ = writeln!(s, r#"<line x1="{}" y1="{y}" x2="{}" y2="{}"/>"#, x + d, x + d, y + w);
            let _ = writeln!(s, r#"<line x1="{x}" y1="{}" x2="{}" y2="{}"/>"#, y + d, x + w, y + d);
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g class="faces" fill="none" stroke="#333333" stroke-width="1">"##);
    for face in FaceId::ALL {
        let (x, y) = face_origin(face, n);
        let _ = writeln!(s, r#"<rect class="face" x="{x}" y="{y}" width="{w}" height="{w}"/>"#);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g class="labels" font-family="sans-serif" font-size="14" fill="#999999">"##);
    for face in FaceId::ALL {
        let (x, y) = face_origin(face, n);
        let _ = writeln!(
            s,
            r#"<text class="label" x="{}" y="{}" text-anchor="middle">{}</text>"#,
            x + w / 2.0,
            y + w / 2.0 + 5.0,
            face.letter()
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g class="glue" stroke-width="3">"#);
    for (k, (a, b, reversed)) in boundary_pairs().into_iter().enumerate() {
        for (face, side) in [a, b] {
            let ((x1, y1), (x2, y2)) = side_segment(face, side, n);
            let _ = writeln!(
                s,
                r#"<line class="glue" data-pair="{k}" data-reversed="{reversed}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{}"/>"#,
                PALETTE[k]
            );
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r##"<g class="strands" fill="none" stroke="#000000" stroke-width="3" stroke-linecap="butt">"##
    );
    for cell in m.cells() {
        let tile = m.tile(cell);
        let (fx, fy) = face_origin(cell.face, n);
        let (x, y) = (fx + cell.col as f64 * CELL, fy + cell.row as f64 * CELL);
        for pair in strand_pairs(tile) {
            for d in strand_paths(x, y, pair.a, pair.b, pair.role) {
                let _ = writeln!(s, r#"<path class="strand" data-tile="{}" d="{d}"/>"#, tile.kind());
            }
        }
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

fn glyph(tile: Tile) -> [&'static str; 3] {
    match tile.kind() {
        1 => ["   ", "-. ", " | "],
        2 => ["   ", " .-", " | "],
        3 => [" | ", " '-", "   "],
        4 => [" | ", "-' ", "   "],
        5 => ["   ", "---", "   "],
        6 => [" | ", " | ", " | "],
        7 => [" | ", "-/-", " | "],
        8 => [" | ", "-\\-", " | "],
        9 => [" | ", "---", " | "],
        10 => [" | ", "-|-", " | "],
        _ => ["   ", " . ", "   "],
    }
}

/// Text drawing of the net, three characters square per tile, with the face
/// letters on a line above each band of faces.
pub fn render_ascii(m: &SphericalMosaic) -> String {
    let n = m.n();
    let band = 3 * n + 1;
    let mut out = String::new();
    for net_row in 0..3 {
        let faces: Vec<FaceId> = FaceId::ALL.into_iter().filter(|f| net_slot(*f).1 == net_row).collect();
        let mut label = vec![b' '; 4 * band];
        for f in &faces {
            label[net_slot(*f).0 * band] = f.letter() as u8;
        }
        out.push_str(String::from_utf8_lossy(&label).trim_end());
        out.push('\n');
        for row in 0..n {
            for sub in 0..3 {
                let mut line = vec![b' '; 4 * band];
                for f in &faces {
                    let start = net_slot(*f).0 * band;
                    let tiles = m.face_tiles(*f);
                    for col in 0..n {
                        let g = glyph(tiles[row * n + col])[sub].as_bytes();
                        line[start + 3 * col..start + 3 * col + 3].copy_from_slice(g);
                    }
                }
                out.push_str(String::from_utf8_lossy(&line).trim_end());
                out.push('\n');
            }
        }
    }
    out
}
