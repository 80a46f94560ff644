//! The committed gadget files are the search output frozen in time; the
//! search is deterministic, so regeneration must reproduce them byte for
//! byte, and the certificates must revalidate against the decoded graphs.

use canongraph::gadgets::{
    find_gadget_for_type, validate_certificate, validate_lemma6_witness, verify_lemma6_pattern,
    CertificateType, PartitionCertificate,
};
use canongraph::graph6::{from_graph6, to_graph6};
use std::fs;
use std::path::PathBuf;

fn asset(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../assets/gadgets").join(name)
}

#[test]
fn regeneration_matches_committed_files() {
    for tag in CertificateType::ALL {
        let (g, cert) = find_gadget_for_type(tag).unwrap();
        let g6 = fs::read_to_string(asset(&format!("{}.g6", tag.letter()))).unwrap();
        assert_eq!(g6.trim_end(), to_graph6(&g), "graph drifted for type {}", tag.letter());
        let json = fs::read_to_string(asset(&format!("{}.json", tag.letter()))).unwrap();
        assert_eq!(json.trim_end(), cert.to_json(), "certificate drifted for type {}", tag.letter());
    }
}

#[test]
fn committed_certificates_revalidate() {
    for tag in CertificateType::ALL {
        let g6 = fs::read_to_string(asset(&format!("{}.g6", tag.letter()))).unwrap();
        let g = from_graph6(g6.trim_end()).unwrap();
        let json = fs::read_to_string(asset(&format!("{}.json", tag.letter()))).unwrap();
        let cert = PartitionCertificate::from_json(json.trim_end(), g.n()).unwrap();
        assert_eq!(cert.tag, tag);
        validate_certificate(&g, &cert).unwrap();
        // each committed graph is non-string: the Lemma 6 pattern is intact
        let w = verify_lemma6_pattern(&g).unwrap();
        validate_lemma6_witness(&g, &w).unwrap();
    }
}
