#!/usr/bin/env python3
"""
This script can be used to generate the default configuration file for sampling runs. Simply
execute this script from the root of the project directory.

   $ python3 scripts/generate_default_configs.py

The file will be generated in the `config` directory as config/SamplerConfig.json. It can be
edited and then copied to the `config` directory next to the `data` folder of a run.
"""
import importlib
import os
import sys


def generate_default_config(klass):
    spec = ConfigSpec(klass.config_points())

    if spec:  # don't bother generating empty config files
        print(f"Generating: {ConfigFile.config_filename(klass)}")
        ConfigFile.save_config(klass, spec.default_config())


if __name__ == "__main__":
    sys.path.insert(0, os.path.abspath("software/codim3"))

    ConfigSpec = importlib.import_module("configuration").ConfigSpec
    ConfigFile = importlib.import_module("configuration").ConfigFile
    SamplerConfig = importlib.import_module("sampler_config").SamplerConfig

    print(
        """
Generating the default sampling configuration.
Edit config/SamplerConfig.json, or pass command line flags, to change a run's parameters.
"""
    )

    generate_default_config(SamplerConfig)
