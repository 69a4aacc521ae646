from hypothesis import settings

# several properties build graphs or sieve ranges; wall time per example varies
settings.register_profile("domlab", deadline=None)
settings.load_profile("domlab")
