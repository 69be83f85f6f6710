import os

from hypothesis import settings

# HYPOTHESIS_PROFILE=thorough multiplies the example budget for a deeper search
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))
