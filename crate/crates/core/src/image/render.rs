use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use super::{ComplexField, GenericCache, ImageError};
use crate::propagation::{fft2, Direction};

/// Dynamic-range constant of the log display scale.
pub const LOG_SCALE_GAIN: f64 = 1e3;

/// 8-bit RGB raster, three bytes per pixel, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    pub width: usize,
    pub height: usize,
    pub data: Vec<u8>,
}

impl RgbImage {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), width * height * 3);
        Self {
            width,
            height,
            data,
        }
    }

    pub fn pixel(&self, x: usize, y: usize) -> [u8; 3] {
        let i = 3 * (y * self.width + x);
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }
}

macro_rules! named_enum {
    ($(#[$m:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$m])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }

            pub fn allowed() -> String {
                Self::ALL.iter().map(|v| v.as_str()).collect::<Vec<_>>().join(", ")
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = ImageError;

            fn from_str(s: &str) -> Result<Self, ImageError> {
                Self::ALL
                    .iter()
                    .copied()
                    .find(|v| v.as_str() == s)
                    .ok_or_else(|| ImageError::UnknownVariant {
                        kind: stringify!($name),
                        value: s.to_string(),
                        allowed: Self::allowed(),
                    })
            }
        }
    };
}

named_enum!(
    /// Transform applied before viewing.
    TransformType { None => "none", Fft => "fft", Ifft => "ifft" }
);
named_enum!(
    ImageViewType {
        Amplitude => "amplitude",
        Phase => "phase",
        Intensity => "intensity",
        Real => "real",
        Imag => "imag",
    }
);
named_enum!(ColorScheme { Gray => "gray", Viridis => "viridis" });
named_enum!(ImageScaleType { Linear => "linear", Log => "log" });

/// Complete cache key for a rendered view.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ViewKey {
    pub transform: TransformType,
    pub view: ImageViewType,
    pub colormap: ColorScheme,
    pub scale: ImageScaleType,
}

impl Default for ViewKey {
    fn default() -> Self {
        Self {
            transform: TransformType::None,
            view: ImageViewType::Amplitude,
            colormap: ColorScheme::Gray,
            scale: ImageScaleType::Linear,
        }
    }
}

fn view_scalar(z: num_complex::Complex64, view: ImageViewType) -> f64 {
    match view {
        ImageViewType::Amplitude => z.norm(),
        ImageViewType::Phase => {
            // atan2 yields (-pi, pi]; fold pi onto -pi so the range is [-pi, pi)
            let mut a = z.im.atan2(z.re);
            if a >= PI {
                a = -PI;
            }
            (a + PI) / (2.0 * PI)
        }
        ImageViewType::Intensity => z.norm_sqr(),
        ImageViewType::Real => z.re,
        ImageViewType::Imag => z.im,
    }
}

/// Per-frame min-max normalization to [0, 1]. Constant frames map to 0.5.
fn normalize(values: &mut [f64]) -> bool {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let span = hi - lo;
    let magnitude = lo.abs().max(hi.abs());
    if span <= 1e-12 * magnitude || span == 0.0 {
        values.fill(0.5);
        return false;
    }
    for v in values.iter_mut() {
        *v = (*v - lo) / span;
    }
    true
}

const VIRIDIS: [[u8; 3]; 17] = [
    [68, 1, 84],
    [72, 24, 106],
    [71, 45, 123],
    [66, 64, 134],
    [59, 82, 139],
    [51, 99, 141],
    [44, 114, 142],
    [38, 130, 142],
    [33, 145, 140],
    [31, 160, 136],
    [40, 174, 128],
    [63, 188, 115],
    [94, 201, 98],
    [132, 212, 75],
    [173, 220, 48],
    [216, 226, 25],
    [253, 231, 37],
];

fn colorize(s: f64, scheme: ColorScheme) -> [u8; 3] {
    let s = s.clamp(0.0, 1.0);
    match scheme {
        ColorScheme::Gray => {
            let g = (s * 255.0).round() as u8;
            [g, g, g]
        }
        ColorScheme::Viridis => {
            let pos = s * (VIRIDIS.len() - 1) as f64;
            let i = (pos.floor() as usize).min(VIRIDIS.len() - 2);
            let t = pos - i as f64;
            let (a, b) = (VIRIDIS[i], VIRIDIS[i + 1]);
            let lerp = |c: usize| (f64::from(a[c]) * (1.0 - t) + f64::from(b[c]) * t).round() as u8;
            [lerp(0), lerp(1), lerp(2)]
        }
    }
}

/// Renders a field to RGB: optional centered unitary transform, view scalar,
/// min-max normalization, optional log scale, colormap.
pub fn render(field: &ComplexField, key: ViewKey) -> Result<RgbImage, ImageError> {
    if !field.is_finite() {
        return Err(ImageError::NonFinite);
    }
    let transformed;
    let source = match key.transform {
        TransformType::None => field,
        TransformType::Fft => {
            transformed = fft2(field, Direction::Forward).map_err(|_| ImageError::NonFinite)?;
            &transformed
        }
        TransformType::Ifft => {
            transformed = fft2(field, Direction::Inverse).map_err(|_| ImageError::NonFinite)?;
            &transformed
        }
    };
    let mut values: Vec<f64> = source
        .data()
        .iter()
        .map(|&z| view_scalar(z, key.view))
        .collect();
    let varied = normalize(&mut values);
    if varied && key.scale == ImageScaleType::Log {
        let denom = (1.0 + LOG_SCALE_GAIN).ln();
        for v in values.iter_mut() {
            *v = (1.0 + *v * LOG_SCALE_GAIN).ln() / denom;
        }
    }
    let data = values
        .iter()
        .flat_map(|&v| colorize(v, key.colormap))
        .collect();
    Ok(RgbImage::new(field.width(), field.height(), data))
}

/// Rendered views of one field, keyed by the four view components.
pub struct ImageCache {
    field: ComplexField,
    cache: GenericCache<ViewKey, RgbImage>,
}

impl ImageCache {
    pub fn new(field: ComplexField) -> Self {
        Self {
            field,
            cache: GenericCache::new(),
        }
    }

    pub fn field(&self) -> &ComplexField {
        &self.field
    }

    pub fn get(&self, key: ViewKey) -> Result<RgbImage, ImageError> {
        self.cache.get_or_compute(key, || render(&self.field, key))
    }

    pub fn is_cached(&self, key: &ViewKey) -> bool {
        self.cache.contains(key)
    }
}
