# stdio-server.py
import sys
from pathlib import Path

# run from inside 09-mcp without installing the package
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from sncover.server import mcp  # noqa: E402

# Main execution block - this is required to run the server
if __name__ == "__main__":
    mcp.run(transport='stdio')
