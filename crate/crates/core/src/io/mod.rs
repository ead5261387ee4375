mod clusterings;
mod dataset;
mod dendrogram;
mod partition;
mod svg;

pub use clusterings::{clusterings_to_string, parse_clusterings, read_clusterings, write_clusterings};
pub use dataset::{parse_dataset, parse_labels, read_dataset, read_labels};
pub use dendrogram::{
    dendrogram_to_json, export_dendrogram, parse_dendrogram, parse_newick, read_dendrogram,
    to_newick, validate, write_dendrogram, DendrogramFormat, NewickNode,
};
pub use partition::{class_of, partition_csv};
pub use svg::render_dendrogram_svg;
