use slowperc_core::generate::{generate, GenConfig};
use slowperc_core::render::{encode_png, probe_min, render_raster, render_vector, LineStyle, RenderConfig};

#[test]
fn strokes_land_where_the_labels_say() {
    let cfg = GenConfig {
        seed: 31,
        dashed_prob: 0.0,
        ..GenConfig::default()
    };
    for s in generate(&cfg, 60).unwrap() {
        let s = s.unwrap();
        let img = render_raster(&s.figure, &s.render);
        assert_eq!(img.dimensions(), (s.render.width, s.render.height));
        let frame = s.render.frame();
        for seg in s.figure.segments() {
            for k in 0..10 {
                let t = k as f64 / 9.0;
                let x = seg.a().x() + (seg.b().x() - seg.a().x()) * t;
                let y = seg.a().y() + (seg.b().y() - seg.a().y()) * t;
                let (px, py) = frame.to_pixel(slowperc_core::quantize(x, y).unwrap());
                assert!(probe_min(&img, px, py, 1) < 200, "sample {} segment {seg:?} t {t}", s.index);
            }
        }
    }
}

#[test]
fn dashed_segment_midpoints_are_inked() {
    let cfg = GenConfig {
        seed: 32,
        dashed_prob: 1.0,
        ..GenConfig::default()
    };
    for s in generate(&cfg, 60).unwrap() {
        let s = s.unwrap();
        assert!(matches!(s.render.line_style, LineStyle::Dashed { .. }));
        let img = render_raster(&s.figure, &s.render);
        let frame = s.render.frame();
        for seg in s.figure.segments() {
            let (mx, my) = seg.midpoint();
            let (px, py) = frame.to_pixel(slowperc_core::quantize(mx, my).unwrap());
            assert!(probe_min(&img, px, py, 1) < 200);
        }
    }
}

#[test]
fn vector_document_counts_elements() {
    let cfg = GenConfig {
        seed: 33,
        circle_prob: 0.5,
        label_prob: 0.5,
        ..GenConfig::default()
    };
    for s in generate(&cfg, 40).unwrap() {
        let s = s.unwrap();
        let doc = render_vector(&s.figure, &s.render);
        assert_eq!(doc.matches("<path ").count(), s.figure.segments().len());
        assert_eq!(doc.matches("<circle ").count(), s.figure.circles().len());
        assert_eq!(doc.matches("<text ").count(), s.figure.labels().len());
    }
}

#[test]
fn rendering_is_byte_stable() {
    let cfg = GenConfig {
        seed: 34,
        ..GenConfig::default()
    };
    let s = generate(&cfg, 1).unwrap().next().unwrap().unwrap();
    let rc = RenderConfig::new(72, 2.0, LineStyle::Solid).unwrap();
    let a = encode_png(&render_raster(&s.figure, &rc)).unwrap();
    let b = encode_png(&render_raster(&s.figure, &rc)).unwrap();
    assert_eq!(a, b);
}
