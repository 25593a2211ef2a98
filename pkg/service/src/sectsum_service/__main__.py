"""Run the service: ``python -m sectsum_service [--port N] [--config file]``."""

from __future__ import annotations

import argparse

import uvicorn

from sectsum_service.app import create_app
from sectsum_service.config import load_config


def main() -> None:
    parser = argparse.ArgumentParser(prog="sectsum-service")
    parser.add_argument("--config", default=None, help="JSON config file")
    parser.add_argument("--port", type=int, default=None)
    parser.add_argument("--device", default=None)
    parser.add_argument("--encoder-checkpoint", default=None)
    parser.add_argument("--generator-checkpoint", default=None)
    args = parser.parse_args()

    config = load_config(
        args.config,
        overrides={
            "port": args.port,
            "device": args.device,
            "encoder_checkpoint": args.encoder_checkpoint,
            "generator_checkpoint": args.generator_checkpoint,
        },
    )
    uvicorn.run(create_app(config), host="0.0.0.0", port=config.port)


if __name__ == "__main__":
    main()
