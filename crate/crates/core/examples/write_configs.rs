//! Write the sample shop documents under `configs/`.
//!
//! Run from the repository root:
//! `cargo run -p tropflow --example write_configs`

use tropflow::bakery::{BakeryConfig, MachineSpec, Window};
use tropflow::synth;

fn demo_shop() -> BakeryConfig {
    let w = Window::new;
    let exact = Window::exact;
    let machine = |name: &str, processing: Vec<Window>| MachineSpec { name: name.into(), processing };
    BakeryConfig {
        machines: vec![
            machine("mixing", vec![w(10.0, 40.0), w(12.0, 42.0), w(9.0, 39.0)]),
            machine("dividing", vec![exact(1.0), exact(1.0), exact(1.0)]),
            machine("rounding", vec![exact(1.0), exact(1.0), exact(1.0)]),
            machine("pre-proofing", vec![exact(2.0), exact(2.0), exact(2.0)]),
            machine("rolling", vec![exact(1.0), exact(1.0), exact(1.0)]),
            machine("proofing", vec![w(35.0, 80.0), w(40.0, 85.0), w(30.0, 75.0)]),
            machine("baking", vec![w(18.0, 45.0), w(22.0, 50.0), w(16.0, 40.0)]),
        ],
        transport: vec![
            exact(0.0),
            exact(0.0),
            exact(0.0),
            exact(0.0),
            w(2.0, 32.0),
            w(2.0, 32.0),
        ],
        capacities: vec![10, 15, 13],
        quantities: vec![40, 30, 25],
        clean_time: 15.0,
    }
}

fn main() -> std::io::Result<()> {
    let demo = demo_shop();
    demo.validate().expect("demo shop is valid");
    std::fs::write("configs/demo_shop.json", demo.to_json())?;
    std::fs::write(
        "configs/demo_demand.json",
        "{\n  \"quantities\": [25, 45, 20]\n}\n",
    )?;
    let big = synth::big_shop();
    big.validate().expect("big shop is valid");
    std::fs::write("configs/big_shop.json", big.to_json())?;
    println!("wrote configs/demo_shop.json, configs/demo_demand.json, configs/big_shop.json");
    Ok(())
}
