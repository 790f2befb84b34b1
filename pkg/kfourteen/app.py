"""Initialize and run kfourteen."""

from kfourteen.cli import commands, parser
from kfourteen.config import config
from kfourteen.utils import log


def main(argv=None):
    """Initialize the application and run one command.

    Args:
        argv: command line arguments without the program name; sys.argv
            if None.

    Return:
        Exit status: 0 success, 1 failed verification, 2 usage error.
    """
    args = parser.build_parser().parse_args(argv)

    initialization()
    if args.log_level:
        log.set_console_level(args.log_level)

    return commands.run(args)


def initialization():
    """Initialization routine."""
    log.__init__()
    log.log.info("Log file initialized.")
    if config.var.data is None:
        log.config.warning("{}.".format(config.var.error))
    if log.ERROR:
        log.log.warning('Could not find settings in config.')
