import os


def get_plugins():
    if "PBN_PLUGINS" in os.environ:
        return os.environ["PBN_PLUGINS"].split(",")
    else:
        return []


# tolerance for "holds" in independence checks
if "PBN_TOLERANCE" in os.environ:
    tolerance = float(os.environ["PBN_TOLERANCE"])
else:
    tolerance = 1e-9

# decimals printed by the command line front end
if "PBN_PRECISION" in os.environ:
    precision = int(os.environ["PBN_PRECISION"])
else:
    precision = 4

# workers for axiom trials (joblib semantics, -1 means all cores)
if "PBN_N_JOBS" in os.environ:
    n_jobs = int(os.environ["PBN_N_JOBS"])
else:
    n_jobs = 1

# largest intermediate factor inference may create
if "PBN_MAX_FACTOR_CELLS" in os.environ:
    max_factor_cells = int(os.environ["PBN_MAX_FACTOR_CELLS"])
else:
    max_factor_cells = 2 ** 20
