# server.py
from mcp.server.fastmcp import FastMCP

from .certificates import deserialize, verify_certificate
from .diagram import Partition, conjugate, dimension, dist_rows, hook_lengths
from .errors import SnCoverError
from .kronecker import kronecker as _kronecker
from .kronecker import min_cover_power as _min_cover_power
from .kronecker import saxl_check as _saxl_check
from .kronecker import tensor_support as _tensor_support

# Create an MCP server
mcp = FastMCP("sncover")


@mcp.tool(name="dimension")
def dimension_of(partition: str) -> int:
    """Dimension of the irreducible S_n representation labelled by a partition like [3,2,1]"""
    return dimension(Partition.parse(partition))


@mcp.tool()
def kronecker(lam: str, mu: str, nu: str) -> int:
    """Kronecker coefficient g(lam, mu, nu): multiplicity of nu in lam x mu"""
    return _kronecker(Partition.parse(lam), Partition.parse(mu), Partition.parse(nu))


@mcp.tool()
def tensor_support(lam: str, mu: str) -> list[str]:
    """Irreducible constituents of lam x mu, without multiplicities"""
    return [str(p) for p in _tensor_support(Partition.parse(lam), Partition.parse(mu))]


@mcp.tool()
def saxl_check(partition: str) -> bool:
    """Does the tensor square of the partition contain every irreducible?"""
    return _saxl_check(Partition.parse(partition))


@mcp.tool()
def min_cover_power(partition: str, t_max: int = 64) -> dict:
    """Least t such that the t-th tensor power covers every irreducible"""
    result = _min_cover_power(Partition.parse(partition), t_max)
    return {"status": result.status, "power": result.power, "support": str(result.support)}


@mcp.tool()
def verify_certificate_text(certificate: str, mode: str = "structural") -> dict:
    """Verify a certificate document given as JSON text"""
    try:
        return verify_certificate(deserialize(certificate), mode).model_dump()
    except SnCoverError as exc:
        return {"passed": False, "error": str(exc)}


# Partition description resource
@mcp.resource("partition://{rows}")
def describe_partition(rows: str) -> str:
    """Size, conjugate, dimension, distinct rows and hook lengths of a partition given as 4,2,1"""
    p = Partition.parse(f"[{rows}]")
    hooks = hook_lengths(p)
    hook_rows = [[hooks[(i, j)].length for j in range(r)] for i, r in enumerate(p.rows)]
    return (
        f"partition {p}\n"
        f"size {p.size}\n"
        f"conjugate {conjugate(p)}\n"
        f"dimension {dimension(p)}\n"
        f"distinct rows {dist_rows(p)}\n"
        f"hook lengths {hook_rows}\n"
    )


def main() -> None:
    mcp.run(transport="stdio")


if __name__ == "__main__":
    main()
