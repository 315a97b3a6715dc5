#  Copyright 2026 The Wright-Fisher Indirect Selection CLI Authors
#
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.

import json
import os
import pathlib
import tempfile
import unittest
import unittest.mock

from wfis.config.configuration_manager import DEFAULT_SETTINGS, SEED_ENVIRONMENT_VARIABLE, ConfigurationManager
from wfis.utils.error import WfisException


class TestConfigurationManager(unittest.TestCase):
    def setUp(self):
        self._temporary_directory = tempfile.TemporaryDirectory()
        self._settings_file_path = pathlib.Path(self._temporary_directory.name) / "settings.json"
        self._configuration_manager = ConfigurationManager()
        self._configuration_manager.get_settings_file_path = unittest.mock.MagicMock(
            return_value=self._settings_file_path
        )

    def tearDown(self):
        self._temporary_directory.cleanup()

    def test_defaults(self):
        """Tests the built-in defaults if no settings file exists"""

        with unittest.mock.patch.dict(os.environ, {}, clear=True):
            self.assertEqual(self._configuration_manager.get_default_jobs(), DEFAULT_SETTINGS["jobs"])
            self.assertEqual(self._configuration_manager.get_default_seed(), DEFAULT_SETTINGS["seed"])
            self.assertEqual(self._configuration_manager.get_dp_limit(), DEFAULT_SETTINGS["dp_limit"])
            self.assertEqual(self._configuration_manager.get_lattice_limit(), DEFAULT_SETTINGS["lattice_limit"])

    def test_set_and_unset(self):
        """Tests set_int_config_value() and unset_config_value()"""

        self._configuration_manager.set_int_config_value("jobs", 4)
        self._configuration_manager.set_int_config_value("dp_limit", 100)

        self.assertEqual(self._configuration_manager.get_default_jobs(), 4)
        self.assertEqual(self._configuration_manager.get_dp_limit(), 100)

        self._configuration_manager.unset_config_value("jobs")

        self.assertEqual(self._configuration_manager.get_default_jobs(), DEFAULT_SETTINGS["jobs"])
        self.assertTrue(self._settings_file_path.exists())

        self._configuration_manager.unset_config_value("dp_limit")

        self.assertFalse(self._settings_file_path.exists())

        with self.assertRaises(WfisException):
            self._configuration_manager.set_int_config_value("unknown", 1)

    def test_seed_precedence(self):
        """Tests that the environment variable takes precedence over the
        settings file"""

        self._configuration_manager.set_int_config_value("seed", 5)

        with unittest.mock.patch.dict(os.environ, {}, clear=True):
            self.assertEqual(self._configuration_manager.get_default_seed(), 5)

        with unittest.mock.patch.dict(os.environ, {SEED_ENVIRONMENT_VARIABLE: "7"}):
            self.assertEqual(self._configuration_manager.get_default_seed(), 7)

        with unittest.mock.patch.dict(os.environ, {SEED_ENVIRONMENT_VARIABLE: "seven"}):
            with self.assertRaises(WfisException):
                self._configuration_manager.get_default_seed()

    def test_unexpected_type(self):
        """Tests that values of an unexpected type are rejected"""

        self._settings_file_path.write_text(json.dumps({"jobs": "4", "lattice_limit": True}))

        with self.assertRaises(WfisException):
            self._configuration_manager.get_default_jobs()

        with self.assertRaises(WfisException):
            self._configuration_manager.get_lattice_limit()


if __name__ == "__main__":
    unittest.main()
