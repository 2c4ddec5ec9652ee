//! Walks the group catalog: builds each schema, runs the exact axiom
//! verifier, and shows the JSON wire format round-tripping.

use nilcalc::nilgroup::{catalog, schema_from_json, schema_to_json, verify_schema};

fn main() {
    for spec in [
        "torus(1,3)",
        "heisenberg",
        "heisenberg_degrank32",
        "free2step(3)",
        "appC_multidegree",
        "universal(2,0,0;3,3)",
        "universal(1,1;3,2)",
        "product(heisenberg,torus(1,2))",
    ] {
        let schema = catalog::by_name(spec).expect("catalog schema");
        let report = verify_schema(&schema);
        println!(
            "{spec}: dimension {}, class {}, verify = {}",
            schema.dim(),
            schema.class,
            if report.pass { "pass" } else { "FAIL" }
        );
        let json = schema_to_json(&schema);
        let reloaded = schema_from_json(&json).expect("round trip");
        assert_eq!(*schema, *reloaded);
    }
    println!("\nheisenberg schema document:");
    println!("{}", schema_to_json(&catalog::heisenberg().unwrap()));
}
