//! Example scenarios shipped inside the binary.

pub const SCENARIOS: &[(&str, &str)] = &[
    ("free_fermion", include_str!("../scenarios/free_fermion.ini")),
    ("forced_fermion", include_str!("../scenarios/forced_fermion.ini")),
    ("grassmann_forced", include_str!("../scenarios/grassmann_forced.ini")),
    ("driven_boson", include_str!("../scenarios/driven_boson.ini")),
];

pub fn get(name: &str) -> Option<&'static str> {
    SCENARIOS.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}
