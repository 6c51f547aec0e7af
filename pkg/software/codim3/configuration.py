"""Typed configuration points, and the JSON files that override their defaults.

A configuration is a plain `dict` mapping point names to values. A `ConfigSpec` declares which
names exist and what each one accepts. The effective settings of a sampling run are layered, in
increasing priority: the point defaults, an optional JSON file under `config/`, and the command line.
"""

import json
import os
from collections import namedtuple

import sympy

from file_utils import load_json_file

Validation = namedtuple("Validation", "is_valid message")
"""The outcome of checking a value or a whole configuration.

    :param is_valid: True when the check passed.
    :param message: Why the check failed; "Valid." otherwise.
"""

VALID = Validation(is_valid=True, message="Valid.")


def invalid(message: str) -> Validation:
    return Validation(is_valid=False, message=message)


class ConfigPoint:
    """One named option with a default.

    :param name: Key of the option in the configuration dict and in the JSON file
    :param type: What the point holds, for display only
    :param default: Value used when neither the file nor the command line sets the option
    """

    def __init__(self, name: str, type, default):
        self.name = name
        self.type = type
        self.default = default
        self.check_default()

    def validate(self, value) -> Validation:
        raise NotImplementedError

    def check_default(self):
        validation = self.validate(self.default)
        if not validation.is_valid:
            raise ValueError(f"Default for {self.name} is invalid: {validation.message}")


class IntegerConfigPoint(ConfigPoint):
    """An integer in [minimum, maximum]; maximum None leaves the range open above"""

    def __init__(self, name: str, minimum: int, maximum, default: int):
        self.minimum = minimum
        self.maximum = maximum
        super().__init__(name=name, type=int, default=default)

    def validate(self, value) -> Validation:
        # JSON true/false must not pass as 1/0
        if type(value) is not int:
            return invalid(f"Value {value} is not an integer")
        if value < self.minimum or (self.maximum is not None and value > self.maximum):
            return invalid(f"Value {value} is out of range")
        return VALID


class ChoiceConfigPoint(ConfigPoint):
    """One of a fixed list of values, compared by type as well as by value"""

    def __init__(self, name: str, choices, default):
        if default not in choices:
            raise ValueError("default value must be available in given choices")
        self.choices = list(choices)
        super().__init__(name=name, type="choice", default=default)

    def validate(self, value) -> Validation:
        if any(type(value) is type(c) and value == c for c in self.choices):
            return VALID
        listed = ", ".join(str(c) for c in self.choices)
        return invalid(f"Value '{value}' does not exist in valid choices: [{listed}]")


class BooleanConfigPoint(ChoiceConfigPoint):
    def __init__(self, name: str, default: bool):
        super().__init__(name=name, choices=[False, True], default=default)


class CharacteristicConfigPoint(ConfigPoint):
    """The characteristic of the coefficient field: 0 for the rationals or a prime p for GF(p)"""

    def __init__(self, name: str, default: int):
        super().__init__(name=name, type="characteristic", default=default)

    def validate(self, value) -> Validation:
        if type(value) is not int or value < 0:
            return invalid(f"Value {value} is not a nonnegative integer")
        if value != 0 and not sympy.isprime(value):
            return invalid(f"Characteristic {value} is not 0 or a prime")
        return VALID


class DegreeSequenceConfigPoint(ConfigPoint):
    """Either the zero sequence [0], meaning "draw the degrees at random", or a nonempty sequence
    of positive generator degrees
    """

    def __init__(self, name: str, default):
        super().__init__(name=name, type="sequence", default=list(default))

    def validate(self, value) -> Validation:
        if type(value) not in (list, tuple) or not value:
            return invalid(f"Value {value} is not a sequence")
        if any(type(v) is not int for v in value):
            return invalid(f"Value {value} contains a non-integer")
        if list(value) != [0] and min(value) < 1:
            return invalid(f"Degree sequence {value} must be (0) or all positive")
        return VALID


def boolean(name: str, default: bool) -> BooleanConfigPoint:
    return BooleanConfigPoint(name=name, default=default)


def choice(name: str, choices, default) -> ChoiceConfigPoint:
    return ChoiceConfigPoint(name=name, choices=choices, default=default)


def integer(name: str, minimum: int, maximum, default: int) -> IntegerConfigPoint:
    """Shorthand for `IntegerConfigPoint`; the default must lie in [minimum, maximum]"""
    return IntegerConfigPoint(name=name, minimum=minimum, maximum=maximum, default=default)


def characteristic(name: str, default: int) -> CharacteristicConfigPoint:
    return CharacteristicConfigPoint(name=name, default=default)


def degree_sequence(name: str, default) -> DegreeSequenceConfigPoint:
    return DegreeSequenceConfigPoint(name=name, default=default)


class ConfigSpec:
    """The set of points a component can be configured with, keyed by name"""

    def __init__(self, config_points) -> None:
        self.points = {}
        for point in config_points:
            if point.name in self.points:
                raise ValueError(f"config point {point.name} is already defined")
            self.points[point.name] = point

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points.values())

    def default_config(self) -> dict:
        # copy list defaults so callers can't mutate the points
        return {
            name: list(p.default) if type(p.default) is list else p.default
            for name, p in self.points.items()
        }

    def validate(self, configuration: dict) -> Validation:
        """Check a partial configuration: every key must name a point and hold an acceptable value"""
        for name, value in configuration.items():
            point = self.points.get(name)
            if point is None:
                return invalid(f"ConfigPoint '{name}' is not defined.")
            validation = point.validate(value)
            if not validation.is_valid:
                return invalid(f"{name}: {validation.message}")
        return VALID


class ConfigFile:
    """Reads and writes config/<ClassName>.json under a run's root directory"""

    @staticmethod
    def load_from_file(path: str, config_spec: ConfigSpec, overrides: dict = None):
        """Layer the file at path, then the overrides, over the spec's defaults

        @param path  JSON file to read; a missing or unreadable file contributes nothing
        @param overrides  Values from the command line

        @exception ValueError if the file or the overrides fail validation
        """
        config = config_spec.default_config()
        for layer in (load_json_file(path), overrides or {}):
            validation = config_spec.validate(layer)
            if not validation.is_valid:
                raise ValueError(validation.message)
            config.update(layer)
        return ConfigSettings(config)

    @staticmethod
    def config_filename(cls, root: str = "."):
        return os.path.join(root, "config", f"{cls.__qualname__}.json")

    @staticmethod
    def save_config(cls, data: dict, root: str = "."):
        """Write data as cls's config file, creating root/config if needed"""
        path = ConfigFile.config_filename(cls, root)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w") as file:
            # one item per line keeps the file easy to edit by hand
            json.dump(data, file, separators=(",\n", ":"))

    @staticmethod
    def load_config(cls, config_spec: ConfigSpec, root: str = ".", overrides: dict = None):
        return ConfigFile.load_from_file(
            ConfigFile.config_filename(cls, root), config_spec, overrides=overrides
        )


class ConfigSettings:
    """Effective settings of a run, readable as attributes (cfg.mn) or as keys (cfg["mn"])

    @exception ValueError if a key is not a valid Python identifier
    """

    def __init__(self, d: dict):
        for key in d:
            if not key.isidentifier():
                raise ValueError(f"Invalid attribute name: {key!r}")
        self.__dict__.update(d)

    def keys(self):
        return set(self.__dict__)

    def as_dict(self) -> dict:
        return dict(self.__dict__)

    def __getitem__(self, k):
        return getattr(self, k)

    def __eq__(self, that):
        if isinstance(that, ConfigSettings):
            return self.__dict__ == that.__dict__
        if isinstance(that, dict):
            return self.__dict__ == that
        return False
