//! Full curvature reports and their JSON and CSV encodings.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curvature::{self, CurvatureTensor};
use crate::dual::{DualScheme, DualTessellation};
use crate::error::CurvatureError;
use crate::hinge::{self, Hinges};
use crate::mesh::SimplicialMesh;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub vertex: usize,
    pub position: [f64; 3],
    pub boundary: bool,
    pub cell_measure: f64,
    pub mean_curvature: Option<f64>,
    pub deficit: Option<f64>,
    /// Cotangent baseline projected on the outward vertex normal.
    pub cotan: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HingeRecord {
    pub facet: usize,
    pub vertices: Vec<usize>,
    pub measure: f64,
    pub angle: Option<f64>,
    pub region_area: Option<f64>,
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleRecord {
    pub triangle: usize,
    pub vertices: [usize; 3],
    pub area: f64,
    pub tensor: Option<CurvatureTensor>,
    pub kmin: Option<f64>,
    pub kmax: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Totals {
    /// Σ |h| ε_h.
    pub total_mean_curvature: f64,
    /// Σ |V_v| H_v over interior vertices.
    pub cell_weighted_total: f64,
    /// Σ of interior deficit angles (surfaces only).
    pub gauss_bonnet: Option<f64>,
    pub euler_characteristic: i64,
    pub total_volume: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub scheme: DualScheme,
    pub dimension: usize,
    pub boundary_vertices: usize,
    pub boundary_facets: usize,
    pub skipped_hinges: usize,
    pub skipped_triangles: usize,
    pub repaired_orientations: usize,
    pub completeness_error: f64,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub vertices: Vec<VertexRecord>,
    pub hinges: Vec<HingeRecord>,
    pub triangles: Vec<TriangleRecord>,
    pub totals: Totals,
    pub diagnostics: Diagnostics,
}

/// Runs every estimator over the mesh. With `parallel` the per-entity work
/// is spread over the rayon pool; the output is identical either way.
pub fn compute_report(
    mesh: &SimplicialMesh,
    scheme: DualScheme,
    parallel: bool,
) -> Result<CurvatureReport, CurvatureError> {
    let hinges = Hinges::extract(mesh)?;
    let dual = DualTessellation::build(mesh, scheme);
    let mut warnings: Vec<String> = dual.warnings().to_vec();

    let vertex_record = |v: usize| -> Result<VertexRecord, CurvatureError> {
        let p = mesh.point(v);
        let boundary = mesh.is_boundary_vertex(v);
        let interior = |x: Result<f64, CurvatureError>| if boundary { Ok(None) } else { x.map(Some) };
        Ok(VertexRecord {
            vertex: v,
            position: [p.x, p.y, p.z],
            boundary,
            cell_measure: dual.cell_measure(v)?,
            mean_curvature: interior(curvature::mean_curvature(mesh, &hinges, &dual, v))?,
            deficit: match mesh.dim() {
                2 => interior(hinge::deficit_angle(mesh, v))?,
                _ => None,
            },
            cotan: match mesh.dim() {
                2 => interior(curvature::cotan_mean_curvature(mesh, &dual, v).map(|c| c.scalar))?,
                _ => None,
            },
        })
    };
    let hinge_record = |f: usize| -> (HingeRecord, Option<String>) {
        let facet = mesh.facet(f);
        let mut record = HingeRecord {
            facet: f,
            vertices: facet.vertices.clone(),
            measure: mesh.facet_measure(f),
            angle: hinges.angle(f),
            region_area: None,
            alpha: None,
        };
        if record.angle.is_none() {
            return (record, None);
        }
        let outcome = if mesh.dim() == 1 {
            curvature::alpha_hinge(mesh, &hinges, &dual, f).map(|a| (dual.cell_measure(facet.vertices[0]).unwrap_or(0.0), a))
        } else {
            curvature::build_hinge_region(mesh, &hinges, &dual, f).map(|r| (r.area, r.alpha()))
        };
        match outcome {
            Ok((area, alpha)) => {
                record.region_area = Some(area);
                record.alpha = Some(alpha);
                (record, None)
            }
            Err(CurvatureError::BoundaryVertex { .. }) => (record, None),
            Err(e) => (record, Some(format!("hinge {f}: {e}"))),
        }
    };

    let vertices: Vec<VertexRecord> = if parallel {
        (0..mesh.vertex_count()).into_par_iter().map(vertex_record).collect::<Result<_, _>>()?
    } else {
        (0..mesh.vertex_count()).map(vertex_record).collect::<Result<_, _>>()?
    };
    let hinge_results: Vec<(HingeRecord, Option<String>)> = if parallel {
        (0..mesh.facet_count()).into_par_iter().map(hinge_record).collect()
    } else {
        (0..mesh.facet_count()).map(hinge_record).collect()
    };
    let mut hinge_records = Vec::with_capacity(hinge_results.len());
    for (record, warning) in hinge_results {
        warnings.extend(warning);
        hinge_records.push(record);
    }
    let skipped_hinges = hinge_records
        .iter()
        .filter(|h| h.angle.is_some() && h.alpha.is_none())
        .count();

    let mut triangles = Vec::new();
    if mesh.dim() == 2 {
        let alphas: Vec<Option<f64>> = hinge_records.iter().map(|h| h.alpha).collect();
        for t in 0..mesh.simplex_count() {
            let tensor = match curvature::triangle_tensor(mesh, &alphas, t) {
                Ok(k) => Some(k),
                Err(CurvatureError::MissingAlpha { .. }) => None,
                Err(e) => {
                    warnings.push(format!("triangle {t}: {e}"));
                    None
                }
            };
            let principal = tensor.map(|k| k.principal());
            triangles.push(TriangleRecord {
                triangle: t,
                vertices: mesh.triangle(t),
                area: mesh.simplex_volume(t),
                tensor,
                kmin: principal.map(|p| p.0),
                kmax: principal.map(|p| p.1),
            });
        }
    }
    let skipped_triangles = triangles.iter().filter(|t| t.tensor.is_none()).count();

    let cell_weighted_total = vertices
        .iter()
        .filter_map(|v| v.mean_curvature.map(|h| h * v.cell_measure))
        .sum();
    let gauss_bonnet = (mesh.dim() == 2).then(|| vertices.iter().filter_map(|v| v.deficit).sum());
    if !mesh.is_closed() {
        warnings.push(format!(
            "mesh has {} boundary facets; totals cover interior hinges and vertices only",
            mesh.boundary_facet_count()
        ));
    }

    Ok(CurvatureReport {
        totals: Totals {
            total_mean_curvature: curvature::total_mean_curvature(&hinges),
            cell_weighted_total,
            gauss_bonnet,
            euler_characteristic: mesh.euler_characteristic(),
            total_volume: mesh.total_volume(),
        },
        diagnostics: Diagnostics {
            scheme,
            dimension: mesh.dim(),
            boundary_vertices: vertices.iter().filter(|v| v.boundary).count(),
            boundary_facets: mesh.boundary_facet_count(),
            skipped_hinges,
            skipped_triangles,
            repaired_orientations: mesh.repaired_orientations(),
            completeness_error: dual.check(mesh).completeness_error,
            warnings,
        },
        vertices,
        hinges: hinge_records,
        triangles,
    })
}

impl CurvatureReport {
    pub fn write_json<W: Write>(&self, out: W) -> io::Result<()> {
        serde_json::to_writer_pretty(out, self).map_err(io::Error::from)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn write_vertex_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "vertex,x,y,z,boundary,cell_measure,mean_curvature,deficit,cotan")?;
        for v in &self.vertices {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                v.vertex,
                num(v.position[0]),
                num(v.position[1]),
                num(v.position[2]),
                v.boundary as u8,
                num(v.cell_measure),
                opt(v.mean_curvature),
                opt(v.deficit),
                opt(v.cotan)
            )?;
        }
        Ok(())
    }

    pub fn write_hinge_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "facet,v0,v1,measure,angle,region_area,alpha")?;
        for h in &self.hinges {
            let v1 = h.vertices.get(1).map(|v| v.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                h.facet,
                h.vertices[0],
                v1,
                num(h.measure),
                opt(h.angle),
                opt(h.region_area),
                opt(h.alpha)
            )?;
        }
        Ok(())
    }

    pub fn write_triangle_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "triangle,v0,v1,v2,area,k11,k12,k22,kmin,kmax")?;
        for t in &self.triangles {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                t.triangle,
                t.vertices[0],
                t.vertices[1],
                t.vertices[2],
                num(t.area),
                opt(t.tensor.map(|k| k.k11)),
                opt(t.tensor.map(|k| k.k12)),
                opt(t.tensor.map(|k| k.k22)),
                opt(t.kmin),
                opt(t.kmax)
            )?;
        }
        Ok(())
    }

    /// Mean curvature values of the interior vertices.
    pub fn mean_curvatures(&self) -> impl Iterator<Item = f64> + '_ {
        self.vertices.iter().filter_map(|v| v.mean_curvature)
    }
}

/// Fixed 17-significant-digit rendering used in CSV output.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}
