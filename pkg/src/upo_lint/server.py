"""
upo-lint tool server - main entry point.

Exposes the analyses over MCP stdio:
- Prelude loaded once in the lifespan, not at import
- Structured logging to stderr
- Input validation via Pydantic models
"""

from contextlib import asynccontextmanager
from typing import AsyncIterator

from dotenv import load_dotenv
from mcp.server.fastmcp import FastMCP

from . import __version__
from .config import configure_settings
from .logging import configure_logger, get_logger
from .ontology import Ontology
from .prelude import load_prelude
from .tools.analysis import register_analysis_tools_lazy

# Prelude shared by all tool calls (loaded in lifespan)
_prelude: Ontology | None = None


def get_prelude() -> Ontology:
    """
    Get the prelude loaded at startup.

    Raises:
        RuntimeError: If called before server startup
    """
    if _prelude is None:
        raise RuntimeError(
            "Prelude not loaded. "
            "The tool server must be started before running analyses."
        )
    return _prelude


@asynccontextmanager
async def lifespan(mcp: FastMCP) -> AsyncIterator[None]:
    """Load settings and the prelude on startup; release them on shutdown."""
    global _prelude

    load_dotenv()
    settings = configure_settings()
    configure_logger(settings.log_level, settings.log_format == "json")

    logger = get_logger()
    logger.system_startup(__version__)
    _prelude = load_prelude()

    try:
        yield
    finally:
        logger.system_shutdown()
        _prelude = None


mcp = FastMCP(
    name="upo-lint",
    instructions=(
        "Lint and analyse ontologies of fictional, prescribed, simulated and future "
        "entities written in the .upo frame language"
    ),
    lifespan=lifespan,
)

register_analysis_tools_lazy(mcp, get_prelude)


def main() -> None:
    """Main entry point for the tool server (stdio transport)."""
    load_dotenv()
    mcp.run()


if __name__ == "__main__":
    main()
