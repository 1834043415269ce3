"""
Examples:

    :func:`pyteich.cli.RunConfig.import_default` returns the default run
    parameters, the keyword arguments override the defaults. The surface
    point and the slopes of a run are built from the parameters:

    >>> from pyteich.cli import RunConfig
    >>> config = RunConfig.import_default(x1=3.0, x2=3.0, cutoff=30.0)
    >>> config.cutoff
    30.0
    >>> config.surface_point().traces
    (3.0, 3.0, 3.0)
"""
from __future__ import annotations
import os
from multiprocessing import cpu_count
from typing import Any, Callable, Dict, List, Optional, Tuple
import numpy as np
from ..farey import Slope
from ..ini_parser import INIParser, ROOT_PATH
from ..markoff import SurfacePoint, make_surface_point, random_surface_point
from ..series import DEGENERATION_PROFILES

RUN_CONFIG = os.path.join(ROOT_PATH, 'config/run_config.ini')
PRESETS = ('none', 'hexagonal', 'near-cusp:<epsilon>', 'random')

class RunConfig(INIParser):
    """Container with the parameters of a command line run.

    Args:
        point : A dictionary of surface point parameters. The following
            elements are accepted:

            * `x1` : Trace of the curve 1/0.
            * `x2` : Trace of the curve 0/1.
            * `l_delta` : Boundary length, 0 for a punctured torus.
            * `root` : Root of the Markoff cubic for the third trace,
              'smaller' or 'larger'.
            * `preset` : Named point overriding `x1`, `x2` and `root`,
              'none', 'hexagonal', 'near-cusp:<epsilon>' or 'random'.

        series : A dictionary of series parameters. The following elements
            are accepted:

            * `cutoff` : Length cutoff of the enumeration.
            * `epsilon` : Systole length of the degeneration family.
            * `n_terms` : Number of telescoping terms on either side.
            * `mu` : Twisting curve of the variation series.
            * `gamma` : Twisting curve of the twist orbit.
            * `gamma_prime` : Twisted curve of the twist orbit.
            * `f_name` : Degeneration profile, one of
              :data:`pyteich.DEGENERATION_PROFILES`.
            * `thresholds` : Thresholds of the counting function.

        check : A dictionary of tolerances. The following elements are
            accepted:

            * `tolerance` : Tolerance of the identities.
            * `limit_tolerance` : Tolerance of the degeneration limits.
            * `fd_step` : Twist distance of the central differences.

        output : A dictionary of output parameters. The following elements
            are accepted:

            * `format` : Report format, 'json' or 'csv'.
            * `out_path` : Output file path, '-' for the standard output.

        system : A dictionary of calculation parameters. The following
            elements are accepted:

            * `num_threads` : Number of worker processes.
            * `seed` : Seed of the random point preset.
            * `verbose` : Show progress bars and stage summaries.

    Notes:
        The environment variables ``PYTEICH_TOL`` and ``PYTEICH_THREADS``
        override `tolerance` and `num_threads` read from an INI file,
        keyword arguments override both.
    """
    attr_dict = {'point':  ('x1', 'x2', 'l_delta', 'root', 'preset'),
                 'series': ('cutoff', 'epsilon', 'n_terms', 'mu', 'gamma',
                            'gamma_prime', 'f_name', 'thresholds'),
                 'check':  ('tolerance', 'limit_tolerance', 'fd_step'),
                 'output': ('format', 'out_path'),
                 'system': ('num_threads', 'seed', 'verbose')}

    fmt_dict = {'point': 'float', 'point/root': 'str', 'point/preset': 'str',
                'series': 'str', 'series/cutoff': 'float', 'series/epsilon': 'float',
                'series/n_terms': 'int', 'series/thresholds': 'float',
                'check': 'float', 'output': 'str',
                'system': 'int', 'system/verbose': 'bool'}

    env_dict = {'PYTEICH_TOL': 'tolerance', 'PYTEICH_THREADS': 'num_threads'}

    # point attributes
    x1              : float
    x2              : float
    l_delta         : float
    root            : str
    preset          : str

    # series attributes
    cutoff          : float
    epsilon         : float
    n_terms         : int
    mu              : str
    gamma           : str
    gamma_prime     : str
    f_name          : str
    thresholds      : List[float]

    # check attributes
    tolerance       : float
    limit_tolerance : float
    fd_step         : float

    # output attributes
    format          : str
    out_path        : str

    # system attributes
    num_threads     : int
    seed            : int
    verbose         : bool

    def __init__(self, point: Dict[str, Any], series: Dict[str, Any], check: Dict[str, float],
                 output: Dict[str, str], system: Dict[str, int]) -> None:
        super(RunConfig, self).__init__(point=point, series=series, check=check,
                                        output=output, system=system)
        if self.format not in ('json', 'csv'):
            raise ValueError(f"Invalid format '{self.format}', must be 'json' or 'csv'")
        if self.seed <= 0:
            self.update_seed()
        if self.num_threads <= 0:
            self.update_threads()

    @classmethod
    def import_default(cls, **kwargs: Any) -> RunConfig:
        """Return the default :class:`RunConfig`. Extra arguments override
        the default values if provided.

        Args:
            kwargs : Run parameters listed in :class:`RunConfig`.

        Returns:
            A :class:`RunConfig` object with the default parameters.
        """
        return cls.import_ini(RUN_CONFIG, **kwargs)

    @classmethod
    def import_ini(cls, ini_file: str, environ: Optional[Dict[str, str]]=None,
                   **kwargs: Any) -> RunConfig:
        """Initialize a :class:`RunConfig` object with an INI file. The
        environment variables in `env_dict` override the file, the keyword
        arguments override both. Keyword arguments set to None are ignored.

        Args:
            ini_file : Path to the INI file.
            environ : Environment variables, :data:`os.environ` by default.
            kwargs : Run parameters listed in :class:`RunConfig`.

        Returns:
            A :class:`RunConfig` object with all the attributes imported
            from the INI file.
        """
        attr_dict = cls._import_env(cls._import_ini(ini_file), environ)
        for option, section in cls._lookup_dict().items():
            if kwargs.get(option) is not None:
                attr_dict[section][option] = kwargs[option]
        return cls(**attr_dict)

    def update_seed(self, seed: Optional[int]=None) -> None:
        """Update the seed of the random point preset.

        Args:
            seed : New seed value. Chosen randomly if None.
        """
        if seed is None or seed <= 0:
            seed = np.random.default_rng().integers(1, np.iinfo(np.int32).max, endpoint=False)
        self.seed = int(seed)

    def update_threads(self, num_threads: Optional[int]=None) -> None:
        """Update the number of worker processes.

        Args:
            num_threads : Number of processes. Set to the number of CPUs
                (at most 64) if None or not positive.
        """
        if num_threads is None or num_threads <= 0 or num_threads > 64:
            num_threads = int(np.clip(cpu_count(), 1, 64))
        self.num_threads = num_threads

    def surface_point(self) -> SurfacePoint:
        """Return the surface point given by `preset`, or by `x1`, `x2`,
        `l_delta` and `root` if `preset` is 'none'.

        Raises:
            ValueError : If the preset is unknown or the point is not
                admissible.
        """
        preset = self.preset.strip().lower()
        if preset in ('', 'none'):
            return make_surface_point(self.x1, self.x2, self.l_delta, self.root)
        if preset == 'hexagonal':
            return SurfacePoint.hexagonal()
        if preset == 'random':
            return random_surface_point(np.random.default_rng(self.seed), l_delta=self.l_delta)
        if preset.startswith('near-cusp:'):
            try:
                epsilon = float(preset.split(':', 1)[1])
            except ValueError as err:
                raise ValueError(f"Invalid preset '{self.preset}'") from err
            return SurfacePoint.near_cusp(epsilon, self.l_delta)
        raise ValueError(f"Invalid preset '{self.preset}', must be one of {PRESETS}")

    def slope(self, option: str) -> Slope:
        """Parse the slope option `option` ('mu', 'gamma' or
        'gamma_prime').
        """
        return Slope.parse(self[option])

    def profile(self) -> Tuple[Callable[[np.ndarray], np.ndarray], float]:
        """Return the degeneration profile `f_name` and its derivative at 0.

        Raises:
            ValueError : If `f_name` is unknown.
        """
        if self.f_name not in DEGENERATION_PROFILES:
            raise ValueError(f"Invalid profile '{self.f_name}', must be one of "\
                             f"{sorted(DEGENERATION_PROFILES)}")
        return DEGENERATION_PROFILES[self.f_name](self.l_delta)
