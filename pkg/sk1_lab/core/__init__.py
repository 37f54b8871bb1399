"""
Core module for the sk1-lab command line.

This module provides configuration, logging, the report cache and one
executor class per subcommand.
"""

from .config import BatchConfig, HomologyBounds, JobSpec, OutputConfig, ScanConfig
from .base_executor import BaseSubcommandExecutor
from .sk1 import SK1Calculator
from .h2 import HomologyReporter
from .orbits import OrbitReporter
from .logcheck import SuiteRunner
from .coinv import CoinvariantReporter
from .compare import RingComparator
from .certify import CertificateChecker
from .scan import CatalogScanner
from .batch import BatchRunner, EXECUTORS

__all__ = [
    'BatchConfig',
    'HomologyBounds',
    'JobSpec',
    'OutputConfig',
    'ScanConfig',
    'BaseSubcommandExecutor',
    'SK1Calculator',
    'HomologyReporter',
    'OrbitReporter',
    'SuiteRunner',
    'CoinvariantReporter',
    'RingComparator',
    'CertificateChecker',
    'CatalogScanner',
    'BatchRunner',
    'EXECUTORS',
]
