//! File formats and the seeded instance generator.

mod format;
mod generate;

pub use format::{
    complex_from_json, complex_to_json, instance_hash, parse_certificate, parse_instance, serialize_certificate,
    serialize_instance, CertificateFile, ComplexJson, DegreeMatrix, FamilyMember, Instance, InstanceFile,
    LefschetzJson, MatrixJson, Metadata, RingDescriptor, SummandJson, WitnessJson, FORMAT_VERSION,
};
pub use generate::{
    generate_instance, negative_control, perturbed_family, random_profile, DegreeShape, GeneratorProfile,
};
