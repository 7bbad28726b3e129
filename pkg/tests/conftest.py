from hypothesis import settings

# reproducible property runs, no wall-clock flakiness on slow machines
settings.register_profile("newtonpoly", deadline=None, derandomize=True)
settings.load_profile("newtonpoly")
