"""Configuration storage."""

import json
import os.path
from kfourteen import basedir

# Location of the configuration file.
PATH = os.path.join(basedir, 'config', 'config.json')

# Values used whenever the configuration file lacks an entry.
DEFAULTS = {
    'verify': {
        'seed': 14,
        'draws': 3,
        'samples': 20,
        'workers': 0,
        'identity_trials': 12,
        'coefficient_range': 9,
    },
}


class Container:

    """Load and store configurations.

    Attributes:
        data: configuration data (dict).
        error: error message (str).
        fallbacks: keys for which a predefined value had to be used (list).
    """

    def __init__(self, path=PATH):
        self.path = path
        self.data = None
        self.error = "No error"
        self.fallbacks = []
        self.load()

    def load(self):
        """Load configurations from file."""
        try:
            with open(self.path, 'r') as stream:
                self.data = json.load(stream)
        except OSError as e:
            self.data = None
            self.error = "OSError - " + str(e)
        except ValueError as e:
            self.data = None
            self.error = "ValueError - " + str(e)

    def setting(self, section, key):
        """Look up a single value.

        Args:
            section: name of the section, e.g. 'verify' (str).
            key: name of the entry within the section (str).

        Return:
            The configured value or, if it is missing or of the wrong type,
            the predefined value from DEFAULTS.
        """
        default = DEFAULTS[section][key]
        try:
            value = self.data[section][key]
        except (TypeError, KeyError):
            value = None
        if not isinstance(value, type(default)) or isinstance(value, bool):
            if key not in self.fallbacks:
                self.fallbacks.append(key)
            return default
        return value


var = Container()
