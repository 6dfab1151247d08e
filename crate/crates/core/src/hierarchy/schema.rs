use std::f64::consts::PI;

use super::{Folder, HierarchyVersion, OptionNode, OptionTree, Page, Possibility};

pub const SCHEMA_VERSION: HierarchyVersion = HierarchyVersion::new(1, 0, 0);

const MAX_LEVELS: i64 = 256;

fn levels(name: &str, tooltip: &str, default: i64) -> OptionNode {
    OptionNode::integer(name, tooltip, 2, MAX_LEVELS, default)
}

fn projector_page() -> Page {
    let slm_type = OptionNode::select(
        "slm-type",
        "Modulation scheme of the spatial light modulator",
        vec![
            Possibility::new(
                "phase-only",
                "Uniformly spaced phase levels at unit amplitude",
                vec![
                    levels("phase-levels", "Number of distinct phase levels", 4),
                    OptionNode::double("phase-offset", "Phase of the first level in radians", -PI, PI, 0.0),
                ],
            ),
            Possibility::new("binary-phase", "Two phase states, 0 and pi", vec![]),
            Possibility::new(
                "amplitude",
                "Uniformly spaced real amplitude levels in [0, 1]",
                vec![levels("amplitude-levels", "Number of distinct amplitude levels", 2)],
            ),
            Possibility::new(
                "multi-amp",
                "Combined amplitude and phase levels",
                vec![
                    levels("amplitude-levels", "Number of distinct amplitude levels", 4),
                    levels("phase-levels", "Number of distinct phase levels", 4),
                ],
            ),
        ],
        "binary-phase",
    );
    let propagation = OptionNode::select(
        "propagation",
        "Propagation model between the hologram and replay planes",
        vec![
            Possibility::new("fourier", "Far-field replay at the lens focal plane", vec![]),
            Possibility::new(
                "fresnel",
                "Near-field replay at a finite distance",
                vec![OptionNode::double(
                    "distance",
                    "Propagation distance in metres",
                    1e-6,
                    1e3,
                    0.5,
                )],
            ),
        ],
        "fourier",
    );
    Page::new(
        "projector",
        "Optical system",
        vec![Folder::new(
            "slm",
            "Spatial light modulator",
            vec![
                OptionNode::integer("slm-resolution-x", "SLM resolution in pixels along x", 1, 8192, 512),
                OptionNode::integer("slm-resolution-y", "SLM resolution in pixels along y", 1, 8192, 512),
                slm_type,
                OptionNode::double("wavelength", "Illumination wavelength in metres", 1e-9, 1e-3, 532e-9),
                OptionNode::double("pixel-pitch-x", "SLM pixel pitch along x in metres", 1e-9, 1e-2, 8e-6),
                OptionNode::double("pixel-pitch-y", "SLM pixel pitch along y in metres", 1e-9, 1e-2, 8e-6),
                propagation,
            ],
        )],
    )
}

fn algorithm_page() -> Page {
    let algorithm = OptionNode::select(
        "algorithm",
        "Hologram generation algorithm",
        vec![
            Possibility::new(
                "gs",
                "Gerchberg-Saxton iterative Fourier transform",
                vec![
                    OptionNode::integer("iterations", "Number of iterations", 1, 1_000_000, 100),
                    OptionNode::double("feedback-gain", "Error feedback gain on the target amplitude", 0.0, 1.0, 0.0),
                    OptionNode::boolean(
                        "quantize-each-iteration",
                        "Quantise the hologram on every iteration rather than only at the end",
                        false,
                    ),
                ],
            ),
            Possibility::new(
                "sa",
                "Simulated annealing over single-pixel changes",
                vec![
                    OptionNode::integer("proposals", "Number of proposed pixel changes", 1, 1_000_000_000, 100_000),
                    OptionNode::double(
                        "initial-temperature",
                        "Starting temperature; negative selects it automatically",
                        -1.0,
                        1e6,
                        -1.0,
                    ),
                    OptionNode::double("cooling-factor", "Geometric cooling factor per proposal", 1e-6, 1.0, 0.99995),
                ],
            ),
            Possibility::new(
                "dbs",
                "Direct binary search",
                vec![
                    OptionNode::integer("max-passes", "Maximum sweeps over all pixels", 1, 100_000, 10),
                    OptionNode::select(
                        "scan-order",
                        "Order in which pixels are visited",
                        vec![
                            Possibility::new("raster", "Row-major order", vec![]),
                            Possibility::new("random", "Fresh random permutation each pass", vec![]),
                        ],
                        "raster",
                    ),
                ],
            ),
            Possibility::new(
                "ospr",
                "One-step phase retrieval with time-multiplexed subframes",
                vec![OptionNode::integer("subframes", "Number of subframes", 1, 4096, 8)],
            ),
        ],
        "gs",
    );
    Page::new(
        "algorithm",
        "Hologram generation",
        vec![Folder::new(
            "run",
            "Run settings",
            vec![
                algorithm,
                OptionNode::integer("seed", "Random seed; -1 picks one automatically", -1, i64::MAX, -1),
                OptionNode::select(
                    "init-mode",
                    "Starting hologram",
                    vec![
                        Possibility::new("random-phase", "Target amplitude with random phase, back-propagated", vec![]),
                        Possibility::new("backpropagate", "Target amplitude back-propagated as is", vec![]),
                    ],
                    "random-phase",
                ),
                OptionNode::boolean(
                    "rescale-error",
                    "Fit the replay scale to the target before measuring error",
                    true,
                ),
                OptionNode::boolean_with_children(
                    "target-region",
                    "Restrict the error metric to rectangular regions",
                    false,
                    vec![OptionNode::text("rects", "Regions as x,y,w,h separated by ';'", "")],
                ),
                OptionNode::path("illumination", "Illumination amplitude image; empty for uniform"),
            ],
        )],
    )
}

/// The default hologram-generation parameter tree.
pub fn build_schema() -> OptionTree {
    OptionTree::new(SCHEMA_VERSION, vec![projector_page(), algorithm_page()])
}
