"""
Configuration objects for the sk1-lab command line.

This module provides dataclasses for grouping related parameters,
reducing method argument counts and keeping every report's provenance
in one place.
"""

import os
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Optional, Union

from sympy import isprime

from ..algebra.homology import DEFAULT_MAX_ORDER_DEGREE2, HARD_MAX_ORDER_DEGREE2
from ..algebra.rings import RING_KINDS, RingDescriptor
from ..errors import InputError

COMMANDS = ("sk1", "h2", "orbits", "logcheck", "coinv", "compare-rings", "certify")
OUTPUT_FORMATS = ("json", "text")
SCHEMA_VERSION = 1
DEFAULT_CACHE_DIR = "~/.cache/sk1-lab"


def env_int(name: str, default: int) -> int:
    """Integer environment variable with a default."""
    value = os.environ.get(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError as ex:
        raise InputError(f"Environment variable {name} must be an integer, got '{value}'") from ex


@dataclass
class HomologyBounds:
    """Size bound for degree-2 bar complexes."""
    max_order: int = DEFAULT_MAX_ORDER_DEGREE2

    @classmethod
    def resolve(cls, max_order: Optional[int]) -> "HomologyBounds":
        """Option value, else SK1_LAB_MAX_ORDER, else the default bound."""
        value = max_order if max_order is not None else env_int("SK1_LAB_MAX_ORDER", DEFAULT_MAX_ORDER_DEGREE2)
        if value < 1 or value > HARD_MAX_ORDER_DEGREE2:
            raise InputError(f"Degree-2 size bound must be between 1 and {HARD_MAX_ORDER_DEGREE2}, got {value}")
        return cls(value)

    @property
    def is_raised(self) -> bool:
        """True when the bound exceeds the default."""
        return self.max_order > DEFAULT_MAX_ORDER_DEGREE2


@dataclass
class JobSpec:  # pylint: disable=too-many-instance-attributes
    """One computation request, as given on the command line or in a batch file."""
    command: str
    group: Union[str, dict, None] = None
    ring: Union[str, dict] = "Zp"
    p: int = 2
    precision: int = 4
    window: int = 4
    witt_degree: int = 1
    seed: int = 0
    trials: int = 100
    suite: Optional[str] = None
    pair: Optional[str] = None
    dual_path: bool = False
    max_order: int = DEFAULT_MAX_ORDER_DEGREE2

    @classmethod
    def from_dict(cls, data: Any) -> "JobSpec":
        """
        Build a job from a batch-file entry.

        Raises:
            InputError: If the entry is not an object or names unknown fields
        """
        if not isinstance(data, dict):
            raise InputError(f"Batch entries must be objects, got {type(data).__name__}")
        known = set(cls.__dataclass_fields__)
        aliases = {"N": "precision", "D": "window", "f": "witt_degree"}
        values = {}
        for key, value in data.items():
            name = aliases.get(key, key)
            if name not in known:
                raise InputError(f"Unknown job field '{key}'")
            values[name] = value
        if "command" not in values:
            raise InputError("Job is missing 'command'")
        return cls(**values)

    def ring_descriptor(self) -> RingDescriptor:
        """
        The ring descriptor of this job.

        Raises:
            InputError: If a ring object disagrees with the job's prime
        """
        if isinstance(self.ring, dict):
            descriptor = RingDescriptor.from_dict({"p": self.p, "N": self.precision, **self.ring})
            if descriptor.p != self.p:
                raise InputError(f"Ring prime {descriptor.p} does not match the job prime {self.p}")
            return descriptor
        if self.ring not in RING_KINDS:
            raise InputError(f"Unknown ring kind '{self.ring}' (expected one of {', '.join(RING_KINDS)})")
        window = self.window if self.ring in ("PowerSeries", "InverseVar", "Laurent") else 0
        return RingDescriptor(self.ring, self.p, self.precision, self.witt_degree, window)

    def validate(self) -> None:
        """
        Check the job before it runs.

        Raises:
            InputError: On an unknown command, a non-prime p, precision below 1,
                a prime that differs from the ring's, or a missing group
        """
        if self.command not in COMMANDS:
            raise InputError(f"Unknown command '{self.command}' (expected one of {', '.join(COMMANDS)})")
        if not isinstance(self.p, int) or not isprime(self.p):
            raise InputError(f"p must be prime, got {self.p}")
        if self.precision < 1:
            raise InputError(f"Precision N must be >= 1, got {self.precision}")
        if self.trials < 0:
            raise InputError(f"Trial count must be non-negative, got {self.trials}")
        if not 1 <= self.max_order <= HARD_MAX_ORDER_DEGREE2:
            raise InputError(
                f"Degree-2 size bound must be between 1 and {HARD_MAX_ORDER_DEGREE2}, got {self.max_order}")
        if self.command not in ("coinv", "compare-rings") and self.group is None:
            raise InputError(f"Command '{self.command}' needs a group")
        if self.command == "logcheck" and not self.suite:
            raise InputError("Command 'logcheck' needs a suite")
        if self.command == "compare-rings" and not self.pair:
            raise InputError("Command 'compare-rings' needs a pair")
        if self.command != "compare-rings":
            self.ring_descriptor()

    def to_dict(self) -> dict:
        """Canonical representation used for provenance and cache keys."""
        return asdict(self)


@dataclass
class OutputConfig:
    """Where and how reports are written."""
    output_format: str = "json"
    output_file: Optional[str] = None
    cache_dir: Optional[str] = None
    use_cache: bool = True

    def __post_init__(self):
        if self.output_format not in OUTPUT_FORMATS:
            raise InputError(f"Unknown output format '{self.output_format}'")

    @property
    def cache_path(self) -> Path:
        """Cache directory: option, else SK1_LAB_CACHE_DIR, else the documented default."""
        directory = self.cache_dir or os.environ.get("SK1_LAB_CACHE_DIR") or DEFAULT_CACHE_DIR
        return Path(directory).expanduser()


@dataclass
class ScanConfig:
    """Catalog sweep configuration."""
    min_order: int = 1
    max_order: int = 16
    p_groups_only: bool = False
    family: Optional[str] = None
    dual_path: bool = False
    stop_at_first: bool = False


@dataclass
class BatchConfig:
    """Batch-file run configuration."""
    input_file: str
    jobs: int = 1


def default_seed(seed: Optional[int]) -> int:
    """Option value, else SK1_LAB_SEED, else 0."""
    return seed if seed is not None else env_int("SK1_LAB_SEED", 0)
