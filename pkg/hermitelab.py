from src.cli.logging_setup import configure_logging
from src.cli.run_config import parse_args
from src.cli.runner import run


def main(argv=None):
    """
    Main function of the Hermite lab command line.

    Command-line Arguments:
        command (str): One of simulate, estimate, qv, gt, cumulants, info, conjecture, verify.
        --seed (int): Master seed; defaults to $HERMITE_LAB_SEED, then 0.
        --out (str): Output file; a <out>.meta.json sidecar is written next to it.
        --format (str): csv or json.
        --threads (int): Worker count for replicated commands.

    Returns:
        int: Exit code, 0 on success, 1 on numerical errors, 2 on usage errors,
        3 on failed verification.
    """
    config = parse_args(argv)
    configure_logging(config.verbose)
    return run(config)


if __name__ == "__main__":
    exit(main())
