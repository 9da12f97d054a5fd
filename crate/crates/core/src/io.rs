//! Reading and writing meshes as OFF, OBJ and PLY.
//!
//! Curves are stored with two-vertex faces (OFF, PLY faces), `l` lines (OBJ)
//! or a PLY `edge` element, with `z = 0`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use log::warn;

use crate::error::IoError;
use crate::mesh::SimplicialMesh;
use crate::report::CurvatureReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Off,
    Obj,
    Ply,
}

impl MeshFormat {
    pub fn from_path(path: &Path) -> Result<Self, IoError> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(|e| e.to_ascii_lowercase())
            .unwrap_or_default();
        ext.parse()
    }
}

impl FromStr for MeshFormat {
    type Err = IoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "off" => Ok(MeshFormat::Off),
            "obj" => Ok(MeshFormat::Obj),
            "ply" => Ok(MeshFormat::Ply),
            other => Err(IoError::UnsupportedFormat(other.to_string())),
        }
    }
}

/// A mesh read from disk together with the warnings raised while reading it.
#[derive(Debug)]
pub struct LoadedMesh {
    pub mesh: SimplicialMesh,
    pub warnings: Vec<String>,
}

#[derive(Debug, Default)]
struct RawMesh {
    points: Vec<Vec<f64>>,
    faces: Vec<Vec<usize>>,
    warnings: Vec<String>,
}

impl RawMesh {
    fn push_face(&mut self, face: Vec<usize>, line: usize) {
        if face.len() > 3 {
            let message = format!(
                "line {line}: face with {} vertices fan-triangulated",
                face.len()
            );
            warn!("{message}");
            self.warnings.push(message);
            for i in 1..face.len() - 1 {
                self.faces.push(vec![face[0], face[i], face[i + 1]]);
            }
        } else {
            self.faces.push(face);
        }
    }

    fn build(self) -> Result<LoadedMesh, IoError> {
        Ok(LoadedMesh {
            mesh: SimplicialMesh::new(self.points, self.faces)?,
            warnings: self.warnings,
        })
    }
}

pub fn load_mesh(path: &Path) -> Result<LoadedMesh, IoError> {
    let format = MeshFormat::from_path(path)?;
    let bytes = fs::read(path).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    match format {
        MeshFormat::Ply => parse_ply(&bytes, path),
        _ => {
            let text = String::from_utf8(bytes).map_err(|e| IoError::Parse {
                path: path.to_path_buf(),
                line: 0,
                message: e.to_string(),
            })?;
            match format {
                MeshFormat::Off => parse_off(&text, path),
                _ => parse_obj(&text, path),
            }
        }
    }
}

fn parse_error(path: &Path, line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn number<T: FromStr>(token: &str, path: &Path, line: usize) -> Result<T, IoError> {
    token
        .parse()
        .map_err(|_| parse_error(path, line, format!("invalid number '{token}'")))
}

pub fn parse_off(text: &str, path: &Path) -> Result<LoadedMesh, IoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let last_line = text.lines().count();

    let (mut line, mut head) = lines
        .next()
        .ok_or_else(|| parse_error(path, 1, "empty file"))?;
    if let Some(rest) = head.strip_prefix("OFF") {
        head = rest.trim();
        if head.is_empty() {
            (line, head) = lines
                .next()
                .ok_or_else(|| parse_error(path, last_line, "missing counts line"))?;
        }
    }
    let counts: Vec<usize> = head
        .split_whitespace()
        .map(|t| number(t, path, line))
        .collect::<Result<_, _>>()?;
    if counts.len() < 2 {
        return Err(parse_error(path, line, "expected vertex and face counts"));
    }
    let (nv, nf) = (counts[0], counts[1]);

    let mut raw = RawMesh::default();
    for i in 0..nv {
        let (line, l) = lines.next().ok_or_else(|| {
            parse_error(path, last_line, format!("file ends after {i} of {nv} vertices"))
        })?;
        let coords: Vec<f64> = l
            .split_whitespace()
            .take(3)
            .map(|t| number(t, path, line))
            .collect::<Result<_, _>>()?;
        if coords.len() != 3 {
            return Err(parse_error(path, line, "vertex needs three coordinates"));
        }
        raw.points.push(coords);
    }
    for i in 0..nf {
        let (line, l) = lines.next().ok_or_else(|| {
            parse_error(path, last_line, format!("file ends after {i} of {nf} faces"))
        })?;
        let mut tokens = l.split_whitespace();
        let n: usize = number(tokens.next().unwrap_or(""), path, line)?;
        let face: Vec<usize> = tokens
            .take(n)
            .map(|t| number(t, path, line))
            .collect::<Result<_, _>>()?;
        if face.len() != n {
            return Err(parse_error(path, line, format!("face lists {} of {n} indices", face.len())));
        }
        raw.push_face(face, line);
    }
    raw.build()
}

pub fn parse_obj(text: &str, path: &Path) -> Result<LoadedMesh, IoError> {
    let mut raw = RawMesh::default();
    for (i, l) in text.lines().enumerate() {
        let line = i + 1;
        let l = l.split('#').next().unwrap_or("");
        let mut tokens = l.split_whitespace();
        match tokens.next() {
            Some("v") => {
                let coords: Vec<f64> = tokens
                    .take(3)
                    .map(|t| number(t, path, line))
                    .collect::<Result<_, _>>()?;
                if coords.len() != 3 {
                    return Err(parse_error(path, line, "vertex needs three coordinates"));
                }
                raw.points.push(coords);
            }
            Some(kind @ ("f" | "l")) => {
                let count = raw.points.len() as i64;
                let mut face = Vec::new();
                for t in tokens {
                    let index: i64 = number(t.split('/').next().unwrap_or(""), path, line)?;
                    let resolved = if index < 0 { count + index } else { index - 1 };
                    if resolved < 0 {
                        return Err(parse_error(path, line, format!("invalid vertex index {index}")));
                    }
                    face.push(resolved as usize);
                }
                let minimum = if kind == "f" { 3 } else { 2 };
                if face.len() < minimum {
                    return Err(parse_error(path, line, format!("'{kind}' needs at least {minimum} indices")));
                }
                if kind == "l" {
                    for w in face.windows(2) {
                        raw.faces.push(w.to_vec());
                    }
                } else {
                    raw.push_face(face, line);
                }
            }
            _ => {}
        }
    }
    raw.build()
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Scalar {
    I8,
    U8,
    I16,
    U16,
    I32,
    U32,
    F32,
    F64,
}

impl Scalar {
    fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "char" | "int8" => Scalar::I8,
            "uchar" | "uint8" => Scalar::U8,
            "short" | "int16" => Scalar::I16,
            "ushort" | "uint16" => Scalar::U16,
            "int" | "int32" => Scalar::I32,
            "uint" | "uint32" => Scalar::U32,
            "float" | "float32" => Scalar::F32,
            "double" | "float64" => Scalar::F64,
            _ => return None,
        })
    }

    fn size(self) -> usize {
        match self {
            Scalar::I8 | Scalar::U8 => 1,
            Scalar::I16 | Scalar::U16 => 2,
            Scalar::I32 | Scalar::U32 | Scalar::F32 => 4,
            Scalar::F64 => 8,
        }
    }

    fn read_le(self, b: &[u8]) -> f64 {
        match self {
            Scalar::I8 => b[0] as i8 as f64,
            Scalar::U8 => b[0] as f64,
            Scalar::I16 => i16::from_le_bytes([b[0], b[1]]) as f64,
            Scalar::U16 => u16::from_le_bytes([b[0], b[1]]) as f64,
            Scalar::I32 => i32::from_le_bytes(b[..4].try_into().unwrap()) as f64,
            Scalar::U32 => u32::from_le_bytes(b[..4].try_into().unwrap()) as f64,
            Scalar::F32 => f32::from_le_bytes(b[..4].try_into().unwrap()) as f64,
            Scalar::F64 => f64::from_le_bytes(b[..8].try_into().unwrap()),
        }
    }
}

#[derive(Debug, Clone)]
enum Property {
    Scalar { name: String, kind: Scalar },
    List { name: String, count: Scalar, item: Scalar },
}

#[derive(Debug, Clone)]
struct Element {
    name: String,
    count: usize,
    properties: Vec<Property>,
}

/// Source of PLY values, either whitespace-separated text or little-endian binary.
enum PlyData<'a> {
    Ascii {
        lines: Box<dyn Iterator<Item = (usize, &'a str)> + 'a>,
        tokens: Vec<&'a str>,
        pos: usize,
        line: usize,
    },
    Binary {
        bytes: &'a [u8],
        offset: usize,
        line: usize,
    },
}

impl PlyData<'_> {
    fn next(&mut self, kind: Scalar, path: &Path) -> Result<f64, IoError> {
        match self {
            PlyData::Ascii {
                lines,
                tokens,
                pos,
                line,
            } => {
                while *pos >= tokens.len() {
                    let (n, l) = lines
                        .next()
                        .ok_or_else(|| parse_error(path, *line, "unexpected end of PLY data"))?;
                    *line = n;
                    *tokens = l.split_whitespace().collect();
                    *pos = 0;
                }
                let t = tokens[*pos];
                *pos += 1;
                number(t, path, *line)
            }
            PlyData::Binary {
                bytes,
                offset,
                line,
            } => {
                let end = *offset + kind.size();
                if end > bytes.len() {
                    return Err(parse_error(
                        path,
                        *line,
                        format!("binary data ends at byte {} of the body", bytes.len()),
                    ));
                }
                let v = kind.read_le(&bytes[*offset..end]);
                *offset = end;
                Ok(v)
            }
        }
    }

    /// Ends the current ASCII record so each element starts on a fresh line.
    fn end_record(&mut self) {
        if let PlyData::Ascii { tokens, pos, .. } = self {
            *pos = tokens.len();
        }
    }
}

pub fn parse_ply(bytes: &[u8], path: &Path) -> Result<LoadedMesh, IoError> {
    let mut offset = 0;
    let mut header = Vec::new();
    loop {
        let rest = &bytes[offset..];
        let end = rest
            .iter()
            .position(|&b| b == b'\n')
            .ok_or_else(|| parse_error(path, header.len() + 1, "PLY header is not terminated"))?;
        let line = std::str::from_utf8(&rest[..end])
            .map_err(|_| parse_error(path, header.len() + 1, "header is not UTF-8"))?
            .trim()
            .to_string();
        offset += end + 1;
        let done = line == "end_header";
        header.push(line);
        if done {
            break;
        }
    }
    if header.first().map(String::as_str) != Some("ply") {
        return Err(parse_error(path, 1, "missing 'ply' magic"));
    }

    let mut binary = None;
    let mut elements: Vec<Element> = Vec::new();
    for (i, line) in header.iter().enumerate().skip(1) {
        let line_no = i + 1;
        let t: Vec<&str> = line.split_whitespace().collect();
        match t.first().copied() {
            Some("format") => {
                binary = Some(match t.get(1).copied() {
                    Some("ascii") => false,
                    Some("binary_little_endian") => true,
                    other => {
                        return Err(IoError::UnsupportedFormat(format!(
                            "PLY {}",
                            other.unwrap_or("without format")
                        )))
                    }
                })
            }
            Some("element") if t.len() == 3 => elements.push(Element {
                name: t[1].to_string(),
                count: number(t[2], path, line_no)?,
                properties: Vec::new(),
            }),
            Some("property") => {
                let element = elements
                    .last_mut()
                    .ok_or_else(|| parse_error(path, line_no, "property before any element"))?;
                let scalar = |s: &str| {
                    Scalar::parse(s)
                        .ok_or_else(|| parse_error(path, line_no, format!("unknown PLY type '{s}'")))
                };
                let property = if t.get(1) == Some(&"list") && t.len() == 5 {
                    Property::List {
                        name: t[4].to_string(),
                        count: scalar(t[2])?,
                        item: scalar(t[3])?,
                    }
                } else if t.len() == 3 {
                    Property::Scalar {
                        name: t[2].to_string(),
                        kind: scalar(t[1])?,
                    }
                } else {
                    return Err(parse_error(path, line_no, "malformed property"));
                };
                element.properties.push(property);
            }
            Some("comment") | Some("obj_info") | Some("end_header") | None => {}
            Some(other) => return Err(parse_error(path, line_no, format!("unexpected header keyword '{other}'"))),
        }
    }
    let binary = binary.ok_or_else(|| parse_error(path, 2, "missing format line"))?;
    let body_line = header.len() + 1;
    let mut data = if binary {
        PlyData::Binary {
            bytes: &bytes[offset..],
            offset: 0,
            line: body_line,
        }
    } else {
        let text = std::str::from_utf8(&bytes[offset..])
            .map_err(|_| parse_error(path, body_line, "ASCII body is not UTF-8"))?;
        PlyData::Ascii {
            lines: Box::new(text.lines().enumerate().map(move |(i, l)| (body_line + i, l))),
            tokens: Vec::new(),
            pos: 0,
            line: body_line,
        }
    };

    let mut raw = RawMesh::default();
    for element in &elements {
        for _ in 0..element.count {
            let mut xyz = [0.0; 3];
            let mut indices: Option<Vec<usize>> = None;
            let mut edge = [0usize; 2];
            for p in &element.properties {
                match p {
                    Property::Scalar { name, kind } => {
                        let v = data.next(*kind, path)?;
                        match name.as_str() {
                            "x" => xyz[0] = v,
                            "y" => xyz[1] = v,
                            "z" => xyz[2] = v,
                            "vertex1" => edge[0] = v as usize,
                            "vertex2" => edge[1] = v as usize,
                            _ => {}
                        }
                    }
                    Property::List { name, count, item } => {
                        let n = data.next(*count, path)? as usize;
                        let mut list = Vec::with_capacity(n);
                        for _ in 0..n {
                            list.push(data.next(*item, path)? as usize);
                        }
                        if name == "vertex_indices" || name == "vertex_index" {
                            indices = Some(list);
                        }
                    }
                }
            }
            data.end_record();
            match element.name.as_str() {
                "vertex" => raw.points.push(xyz.to_vec()),
                "face" => {
                    let face = indices.ok_or_else(|| parse_error(path, body_line, "face element without vertex_indices"))?;
                    raw.push_face(face, body_line);
                }
                "edge" => raw.faces.push(edge.to_vec()),
                _ => {}
            }
        }
    }
    raw.build()
}

/// OFF text for a mesh; coordinates use shortest round-trip formatting.
pub fn to_off(mesh: &SimplicialMesh) -> String {
    let mut s = String::from("OFF\n");
    let _ = writeln!(s, "{} {} 0", mesh.vertex_count(), mesh.simplex_count());
    for p in mesh.points() {
        let _ = writeln!(s, "{:?} {:?} {:?}", p.x, p.y, p.z);
    }
    for simplex in mesh.simplices() {
        let _ = write!(s, "{}", simplex.len());
        for v in simplex {
            let _ = write!(s, " {v}");
        }
        s.push('\n');
    }
    s
}

pub fn to_obj(mesh: &SimplicialMesh) -> String {
    let mut s = String::new();
    for p in mesh.points() {
        let _ = writeln!(s, "v {:?} {:?} {:?}", p.x, p.y, p.z);
    }
    let tag = if mesh.dim() == 1 { "l" } else { "f" };
    for simplex in mesh.simplices() {
        let _ = write!(s, "{tag}");
        for v in simplex {
            let _ = write!(s, " {}", v + 1);
        }
        s.push('\n');
    }
    s
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), IoError> {
    fs::write(path, contents).map_err(|source| IoError::Io {
        path: PathBuf::from(path),
        source,
    })
}

/// Writes a mesh, picking the format from the file extension.
pub fn save_mesh(mesh: &SimplicialMesh, path: &Path) -> Result<(), IoError> {
    match MeshFormat::from_path(path)? {
        MeshFormat::Off => write_file(path, to_off(mesh).as_bytes()),
        MeshFormat::Obj => write_file(path, to_obj(mesh).as_bytes()),
        MeshFormat::Ply => export_ply(mesh, None, path, PlyEncoding::BinaryLittleEndian),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PlyEncoding {
    Ascii,
    #[default]
    BinaryLittleEndian,
}

/// PLY with per-vertex `mean_curvature` and per-face tensor entries
/// `k11 k12 k22 kmin kmax`. Missing values are written as NaN.
pub fn ply_bytes(mesh: &SimplicialMesh, report: Option<&CurvatureReport>, encoding: PlyEncoding) -> Vec<u8> {
    let curve = mesh.dim() == 1;
    let mut header = String::from("ply\n");
    header.push_str(match encoding {
        PlyEncoding::Ascii => "format ascii 1.0\n",
        PlyEncoding::BinaryLittleEndian => "format binary_little_endian 1.0\n",
    });
    let _ = writeln!(header, "element vertex {}", mesh.vertex_count());
    header.push_str("property double x\nproperty double y\nproperty double z\n");
    if report.is_some() {
        header.push_str("property double mean_curvature\n");
    }
    if curve {
        let _ = writeln!(header, "element edge {}", mesh.simplex_count());
        header.push_str("property int vertex1\nproperty int vertex2\n");
    } else {
        let _ = writeln!(header, "element face {}", mesh.simplex_count());
        header.push_str("property list uchar int vertex_indices\n");
        if report.is_some() {
            for name in ["k11", "k12", "k22", "kmin", "kmax"] {
                let _ = writeln!(header, "property double {name}");
            }
        }
    }
    header.push_str("end_header\n");

    let mut out = header.into_bytes();
    let mut text = String::new();
    let nan = f64::NAN;
    for (v, p) in mesh.points().iter().enumerate() {
        let mut values = vec![p.x, p.y, p.z];
        if let Some(r) = report {
            values.push(r.vertices[v].mean_curvature.unwrap_or(nan));
        }
        match encoding {
            PlyEncoding::Ascii => {
                let row: Vec<String> = values.iter().map(|x| format!("{x:?}")).collect();
                let _ = writeln!(text, "{}", row.join(" "));
            }
            PlyEncoding::BinaryLittleEndian => {
                for x in values {
                    out.extend_from_slice(&x.to_le_bytes());
                }
            }
        }
    }
    for (s, simplex) in mesh.simplices().iter().enumerate() {
        let mut tensor = Vec::new();
        if let (Some(r), false) = (report, curve) {
            let t = &r.triangles[s];
            let k = t.tensor;
            tensor = vec![
                k.map_or(nan, |k| k.k11),
                k.map_or(nan, |k| k.k12),
                k.map_or(nan, |k| k.k22),
                t.kmin.unwrap_or(nan),
                t.kmax.unwrap_or(nan),
            ];
        }
        match encoding {
            PlyEncoding::Ascii => {
                let mut row: Vec<String> = Vec::new();
                if !curve {
                    row.push(simplex.len().to_string());
                }
                row.extend(simplex.iter().map(|v| v.to_string()));
                row.extend(tensor.iter().map(|x| format!("{x:?}")));
                let _ = writeln!(text, "{}", row.join(" "));
            }
            PlyEncoding::BinaryLittleEndian => {
                if !curve {
                    out.push(simplex.len() as u8);
                }
                for &v in simplex {
                    out.extend_from_slice(&(v as i32).to_le_bytes());
                }
                for x in tensor {
                    out.extend_from_slice(&x.to_le_bytes());
                }
            }
        }
    }
    out.extend_from_slice(text.as_bytes());
    out
}

pub fn export_ply(
    mesh: &SimplicialMesh,
    report: Option<&CurvatureReport>,
    path: &Path,
    encoding: PlyEncoding,
) -> Result<(), IoError> {
    write_file(path, &ply_bytes(mesh, report, encoding))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("test.off")
    }

    #[test]
    fn off_with_quad_is_fan_triangulated() {
        let text = "OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n";
        let loaded = parse_off(text, p()).unwrap();
        assert_eq!(loaded.mesh.simplex_count(), 2);
        assert_eq!(loaded.warnings.len(), 1);
    }

    #[test]
    fn truncated_off_reports_a_line() {
        let text = "OFF\n3 1 0\n0 0 0\n1 0 0\n";
        match parse_off(text, p()).unwrap_err() {
            IoError::Parse { line, .. } => assert_eq!(line, 4),
            e => panic!("unexpected {e:?}"),
        }
        match parse_off("OFF\n3 1 0\n0 0 x\n", p()).unwrap_err() {
            IoError::Parse { line, message, .. } => {
                assert_eq!(line, 3);
                assert!(message.contains("'x'"));
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn obj_accepts_slashes_negative_indices_and_lines() {
        let text = "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1/1/1 2//2 -1\n";
        let loaded = parse_obj(text, Path::new("a.obj")).unwrap();
        assert_eq!(loaded.mesh.simplices()[0], vec![0, 1, 2]);
        let square = "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nl 1 2 3 4 1\n";
        let curve = parse_obj(square, Path::new("a.obj")).unwrap().mesh;
        assert_eq!(curve.dim(), 1);
        assert_eq!(curve.simplex_count(), 4);
    }

    #[test]
    fn unknown_extension_is_unsupported() {
        assert!(matches!(
            MeshFormat::from_path(Path::new("mesh.stl")),
            Err(IoError::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn ply_roundtrip_in_both_encodings() {
        let mesh = crate::fixtures::gen_icosphere(1.0, 1).unwrap();
        for encoding in [PlyEncoding::Ascii, PlyEncoding::BinaryLittleEndian] {
            let bytes = ply_bytes(&mesh, None, encoding);
            let back = parse_ply(&bytes, Path::new("x.ply")).unwrap().mesh;
            assert_eq!(back.points(), mesh.points());
            assert_eq!(back.simplices(), mesh.simplices());
        }
    }
}
