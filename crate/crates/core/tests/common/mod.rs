//! Reference tables shared by the integration tests.

#![allow(dead_code, clippy::excessive_precision)]

/// erfc reference values, 40-digit arithmetic (mpmath), rounded to 20 digits.
pub const ERFC_REFERENCE: [(f64, f64); 20] = [
    (-3.0, 1.999_977_909_503_001_414_6),
    (-1.5, 1.966_105_146_475_310_727_1),
    (-0.7, 1.677_801_193_837_418_442_3),
    (-0.25, 1.276_326_390_168_236_933),
    (0.0, 1.0),
    (0.1, 0.887_537_083_981_715_101_6),
    (0.3, 0.671_373_240_540_872_583_81),
    (0.468_75, 0.507_386_526_782_062_008_41),
    (0.5, 0.479_500_122_186_953_462_32),
    (0.7, 0.322_198_806_162_581_557_72),
    (1.0, 0.157_299_207_050_285_130_66),
    (1.5, 0.033_894_853_524_689_272_933),
    (2.0, 0.004_677_734_981_047_265_837_9),
    (2.5, 0.000_406_952_017_444_958_939_56),
    (3.0, 2.209_049_699_858_544_137_3e-5),
    (3.5, 7.430_983_723_414_127_455_2e-7),
    (4.0, 1.541_725_790_028_001_885_2e-8),
    (4.5, 1.966_160_441_542_887_476_3e-10),
    (5.0, 1.537_459_794_428_034_850_2e-12),
    (6.0, 2.151_973_671_249_891_311_7e-17),
];

/// i2erfc as the repeated integral of erfc, evaluated by nested adaptive
/// quadrature (mpmath, 20 digits).
pub const I2ERFC_REFERENCE: [(f64, f64); 20] = [
    (0.0, 0.25),
    (0.05, 0.223_017_018_798_174_332),
    (0.1, 0.198_393_166_245_613_926),
    (0.2, 0.155_663_561_557_927_657),
    (0.3, 0.120_710_537_738_135_184),
    (0.4, 0.092_476_392_950_668_625_4),
    (0.5, 0.069_964_723_453_176_949_1),
    (0.6, 0.052_255_366_178_248_766_4),
    (0.75, 0.032_898_994_147_468_712_1),
    (0.9, 0.020_082_191_658_963_348_5),
    (1.0, 0.014_197_530_932_565_172_2),
    (1.2, 0.006_792_137_016_191_938_61),
    (1.4, 0.003_059_705_004_894_707_64),
    (1.6, 0.001_295_350_029_116_526_45),
    (1.8, 0.000_514_486_441_778_586_811),
    (2.0, 0.000_191_411_030_310_321_207),
    (2.5, 1.203_541_490_629_284_58e-5),
    (3.0, 4.900_717_832_199_561_03e-7),
    (3.5, 1.275_369_346_482_155_5e-8),
    (4.0, 2.100_309_586_445_728_47e-10),
];
