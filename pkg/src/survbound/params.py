# Author: Hauxu Yu

# A module to define and check the parameters of a run

import os

from .errors import InvalidConfig

# Largest even order supported by the moment algebra
MAX_ORDER = 16

# Environment variable overriding the default quadrature tolerance
TOLERANCE_ENV = "SURVBOUND_TOL"


# Define a class to store the parameters
class Params:
    """
    A class to store the parameters of a command-line run.
    """

    def __init__(self):
        """
        Function to initiate Params.
        ----------------------------------------------------------
        """

        # Need to be specified by the user
        self.spec_path = None     # Distribution spec file (JSON) or the name of a bundled spec
        self.command = None       # "moments", "bounds", "exact", "envelope", "composite" or "figure"

        # Parameters for the bounds
        self.orders = [2, 4, 6, 8]   # Even orders of the bounds, each <= 16
        self.cutoff = None           # Fixed energy cut-off c, None means no cut-off

        # Parameters for the grids
        self.t_max = 5.0          # Time horizon T in units of hbar over the distribution scale
        self.grid_size = 512      # Number of time points, default is 512
        self.c_grid_size = 256    # Number of cut-off points of an envelope sweep, default is 256

        # Parameters for the quadrature
        self.tolerance = 1e-11         # Absolute tolerance of the moment integrals
        self.oracle_tolerance = 1e-9   # Absolute tolerance of the survival amplitude quadrature

        # Parameters for input and output
        self.renormalize = False   # Whether to rescale tabulated densities far from unit weight
        self.output = None         # Output path, None writes to stdout
        self.output_format = "csv" # "csv" or "json"

        # Other parameters
        self.show_progress = False   # Whether to show a progress bar for cut-off sweeps

        env_tol = os.environ.get(TOLERANCE_ENV)
        if env_tol:
            try:
                self.tolerance = float(env_tol)
                self.oracle_tolerance = self.tolerance
            except ValueError:
                raise InvalidConfig("{} must be a number, got '{}'".format(TOLERANCE_ENV, env_tol))


    def check(self):
        """
        Check the parameters and raise InvalidConfig for the first violation.
        """

        if len(self.orders) == 0:
            raise InvalidConfig("At least one order is required.")
        for n in self.orders:
            if n % 2 != 0 or n < 2:
                raise InvalidConfig("Orders must be even and >= 2, got {}".format(n))
            if n > MAX_ORDER:
                raise InvalidConfig("Orders must be <= {}, got {}".format(MAX_ORDER, n))
        if not self.t_max > 0:
            raise InvalidConfig("The time horizon must be positive, got {}".format(self.t_max))
        if self.grid_size < 2 or self.c_grid_size < 2:
            raise InvalidConfig("Grids need at least 2 points.")
        if not self.tolerance > 0 or not self.oracle_tolerance > 0:
            raise InvalidConfig("Tolerances must be positive.")
        if self.output_format not in ("csv", "json"):
            raise InvalidConfig("Unknown output format '{}'".format(self.output_format))


    def __str__(self):
        """
        Render the parameters, one per line.
        ----------------------------------------------------------
        """

        lines = [
            "Distribution spec: " + str(self.spec_path),
            "Command: " + str(self.command),
            "Orders: " + str(self.orders),
            "Cut-off: " + str(self.cutoff),
            "Time horizon: " + str(self.t_max),
            "Time grid size: " + str(self.grid_size),
            "Cut-off grid size: " + str(self.c_grid_size),
            "Quadrature tolerance: " + str(self.tolerance),
            "Oracle tolerance: " + str(self.oracle_tolerance),
            "Renormalize: " + str(self.renormalize),
            "Output: " + str(self.output),
            "Output format: " + str(self.output_format),
        ]
        return "\n".join(lines)
