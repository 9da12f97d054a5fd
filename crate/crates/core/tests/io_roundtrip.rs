use std::fs;

use hingecurv::io::{export_ply, load_mesh, save_mesh, to_off, PlyEncoding};
use hingecurv::{compute_report, fixtures, DualScheme, IoError, MeshError};

#[test]
fn off_obj_and_ply_roundtrip_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    let meshes = [
        fixtures::gen_icosphere(1.7, 2).unwrap(),
        fixtures::gen_circle(9, 0.3).unwrap(),
        fixtures::gen_cylinder(11, 1.0, 0.37, 4, Default::default()).unwrap(),
    ];
    for (i, mesh) in meshes.iter().enumerate() {
        for ext in ["off", "obj", "ply"] {
            let path = dir.path().join(format!("m{i}.{ext}"));
            save_mesh(mesh, &path).unwrap();
            let back = load_mesh(&path).unwrap();
            assert!(back.warnings.is_empty());
            assert_eq!(back.mesh.points(), mesh.points(), "{ext}");
            assert_eq!(back.mesh.simplices(), mesh.simplices(), "{ext}");
        }
    }
}

#[test]
fn icosahedron_off_has_thirty_edges() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ico.off");
    fs::write(&path, to_off(&fixtures::gen_icosphere(1.0, 0).unwrap())).unwrap();
    let mesh = load_mesh(&path).unwrap().mesh;
    assert_eq!((mesh.vertex_count(), mesh.facet_count(), mesh.simplex_count()), (12, 30, 20));
    assert_eq!(mesh.euler_characteristic(), 2);
}

#[test]
fn obj_quad_is_split_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("quad.obj");
    fs::write(&path, "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n").unwrap();
    let loaded = load_mesh(&path).unwrap();
    assert_eq!(loaded.mesh.simplex_count(), 2);
    assert_eq!(loaded.warnings.len(), 1);
}

#[test]
fn truncated_files_report_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let off = dir.path().join("cut.off");
    fs::write(&off, "OFF\n4 2 0\n0 0 0\n1 0 0\n1 1 0\n").unwrap();
    assert!(matches!(load_mesh(&off), Err(IoError::Parse { line: 5, .. })));

    let mesh = fixtures::gen_icosphere(1.0, 0).unwrap();
    let ply = dir.path().join("cut.ply");
    export_ply(&mesh, None, &ply, PlyEncoding::BinaryLittleEndian).unwrap();
    let bytes = fs::read(&ply).unwrap();
    fs::write(&ply, &bytes[..bytes.len() - 7]).unwrap();
    assert!(matches!(load_mesh(&ply), Err(IoError::Parse { .. })));
}

#[test]
fn invalid_meshes_surface_mesh_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.off");
    fs::write(&path, "OFF\n5 3 0\n0 0 0\n1 0 0\n0 1 0\n0 -1 0\n0 0 1\n3 0 1 2\n3 1 0 3\n3 0 1 4\n").unwrap();
    match load_mesh(&path) {
        Err(IoError::Mesh(MeshError::NonManifold { vertices, count })) => {
            assert_eq!(vertices, vec![0, 1]);
            assert_eq!(count, 3);
        }
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(
        load_mesh(&dir.path().join("x.stl")),
        Err(IoError::UnsupportedFormat(_))
    ));
    assert!(matches!(load_mesh(&dir.path().join("missing.off")), Err(IoError::Io { .. })));
}

#[test]
fn ply_export_carries_curvature_properties() {
    let dir = tempfile::tempdir().unwrap();
    let mesh = fixtures::gen_icosphere(1.0, 0).unwrap();
    let report = compute_report(&mesh, DualScheme::Mixed, false).unwrap();
    let path = dir.path().join("curv.ply");
    export_ply(&mesh, Some(&report), &path, PlyEncoding::Ascii).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains("property double mean_curvature"));
    for name in ["k11", "k12", "k22", "kmin", "kmax"] {
        assert!(text.contains(&format!("property double {name}\n")));
    }
    let body: Vec<&str> = text.split("end_header\n").nth(1).unwrap().lines().collect();
    let h: f64 = body[0].split_whitespace().nth(3).unwrap().parse().unwrap();
    assert_eq!(h, report.vertices[0].mean_curvature.unwrap());
    let face: Vec<f64> = body[12].split_whitespace().map(|t| t.parse().unwrap()).collect();
    assert_eq!(face.len(), 4 + 5);
    assert_eq!(face[7], report.triangles[0].kmin.unwrap());

    export_ply(&mesh, Some(&report), &path, PlyEncoding::BinaryLittleEndian).unwrap();
    let back = load_mesh(&path).unwrap().mesh;
    assert_eq!(back.points(), mesh.points());
}
