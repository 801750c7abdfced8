fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "fixtures".into());
    for (name, file) in [("P2", "p2"), ("C1xC2", "c1xc2"), ("ExE", "exe"), ("P2-blowup", "p2blowup")] {
        let model = seshadri_core::builtin(name).expect("builtin");
        std::fs::write(format!("{dir}/{file}.surface.json"), model.to_json()).expect("write");
    }
}
