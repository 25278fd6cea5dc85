from __future__ import absolute_import, annotations

import os
from unittest import TestCase
from unittest.mock import patch

from common.logging_config import get_logging_configuration


class TestLoggingConfiguration(TestCase):

    def test_console_only(self):
        with patch.dict(os.environ, {}, clear=False):
            os.environ.pop("LOG_TO_FILE", None)
            configuration = get_logging_configuration("singular-scan")
        self.assertEqual(["console"], configuration["root"]["handlers"])
        self.assertNotIn("file", configuration["handlers"])
        self.assertIn("singular", configuration["loggers"])

    def test_file_handler(self):
        with patch.dict(os.environ, {"LOG_TO_FILE": "1", "LOGS_DIR": "/var/log/singular"}):
            configuration = get_logging_configuration("singular-exclude")
        self.assertEqual(["console", "file"], configuration["loggers"]["singular"]["handlers"])
        self.assertEqual("/var/log/singular/singular-exclude.log", configuration["handlers"]["file"]["filename"])
        self.assertEqual(3, configuration["handlers"]["file"]["backupCount"])
