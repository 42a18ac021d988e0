import os
import tempfile

# keep the zero-table cache out of the home directory during tests
_CACHE_DIR = tempfile.mkdtemp(prefix="zcm-test-cache-")
os.environ.setdefault("ZCM_ZERO_CACHE", os.path.join(_CACHE_DIR, "zeros.csv"))
