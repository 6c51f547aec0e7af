import configuration
from configuration import ConfigFile, ConfigSpec, Validation, VALID

# The zero sequence: draw mn degrees from [lowDeg, highDeg] on every attempt
ZERO_SEQUENCE = [0]

# Order in which the start banner echoes the options
OPTION_ORDER = (
    "maxTries",
    "degSeq",
    "strictTerms",
    "logging",
    "mn",
    "numTerms",
    "highDeg",
    "useN",
    "maxM",
    "maxN",
    "checkIn",
    "fieldChar",
    "lowDeg",
)


class SamplerConfig:
    """This class provides the parameters of a sampling run.

    To override the default values, create config/SamplerConfig.json in the working directory and
    populate it with a JSON object, e.g. to sample over the rationals with four minimal generators:

    {
        "fieldChar": 0,
        "mn": 4
    }

    Command line flags take priority over the file.
    """

    @classmethod
    def config_points(cls):
        # fmt: off
        return [
            # Coefficient field: a prime p for GF(p), 0 for the rationals
            configuration.characteristic(name="fieldChar", default=3),

            # Print a progress line every checkIn ideals; 0 disables
            configuration.integer(name="checkIn", minimum=0, maximum=None, default=0),

            # Generator degrees, or (0) to draw them from [lowDeg, highDeg]
            configuration.degree_sequence(name="degSeq", default=ZERO_SEQUENCE),
            configuration.integer(name="lowDeg", minimum=1, maximum=None, default=2),
            configuration.integer(name="highDeg", minimum=1, maximum=None, default=8),

            # Terms per random form; 0 means a dense form with random coefficients
            configuration.integer(name="numTerms", minimum=0, maximum=None, default=0),

            # Target number of minimal generators, or target type when useN is set
            configuration.integer(name="mn", minimum=1, maximum=None, default=5),
            configuration.boolean(name="useN", default=False),

            configuration.integer(name="maxTries", minimum=0, maximum=None, default=10),
            configuration.boolean(name="strictTerms", default=False),
            configuration.integer(name="maxM", minimum=1, maximum=None, default=12),
            configuration.integer(name="maxN", minimum=1, maximum=None, default=10),

            # Append every banner to log.txt
            configuration.boolean(name="logging", default=False),
        ]
        # fmt: on


def validate_sampler_config(cfg) -> Validation:
    """Check the rules that involve more than one parameter

    @param cfg  A ConfigSettings (or dict) holding every SamplerConfig point
    """
    if cfg["lowDeg"] > cfg["highDeg"]:
        return Validation(
            is_valid=False, message=f"lowDeg {cfg['lowDeg']} exceeds highDeg {cfg['highDeg']}"
        )
    return VALID


def load_sampler_config(root: str = ".", overrides: dict = None, path: str = None):
    """Build the effective configuration: defaults, then config/SamplerConfig.json, then overrides

    @param path  Read this file instead of the one under root/config

    @exception ValueError if any layer is invalid
    """
    spec = ConfigSpec(SamplerConfig.config_points())
    if path is None:
        cfg = ConfigFile.load_config(SamplerConfig, spec, root=root, overrides=overrides)
    else:
        cfg = ConfigFile.load_from_file(path, spec, overrides=overrides)
    validation = validate_sampler_config(cfg)
    if not validation.is_valid:
        raise ValueError(validation.message)
    return cfg


def default_sampler_config(**overrides):
    """The default configuration with some values replaced, without reading any file"""
    spec = ConfigSpec(SamplerConfig.config_points())
    config = spec.default_config()
    validation = spec.validate(overrides)
    if not validation.is_valid:
        raise ValueError(validation.message)
    config.update(overrides)
    settings = configuration.ConfigSettings(config)
    validation = validate_sampler_config(settings)
    if not validation.is_valid:
        raise ValueError(validation.message)
    return settings
