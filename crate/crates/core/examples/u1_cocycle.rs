use weilkit::chern_weil::{z_theta_fat, z_theta_simplicial};
use weilkit::io::{parse_document, Document};

fn load(name: &str) -> Document {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    parse_document(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn main() -> weilkit::Result<()> {
    let Document::Connection(c) = load("u1_eta.json") else { panic!("expected a connection") };
    let Document::InvariantPolynomial(p) = load("u1_xi.json") else { panic!("expected a polynomial") };
    let (host, pc) = c.build()?;
    let f = p.build(&host.lie)?;
    let z = z_theta_simplicial(&pc, &f)?;
    assert_eq!(z, z_theta_fat(&pc, &f)?);
    println!("{}", weilkit::io::latex_bigraded(&z));
    Ok(())
}
