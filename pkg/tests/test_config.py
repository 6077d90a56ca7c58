from simflat.config import PACKAGE_DATA_DIR, Settings, get_settings


def test_settings_are_shared():
    assert get_settings() is get_settings()


def test_environment_overrides(monkeypatch, tmp_path):
    monkeypatch.setenv("SIMFLAT_NODE_CAP", "7")
    monkeypatch.setenv("SIMFLAT_DB_DIR", str(tmp_path))
    Settings.reset()
    try:
        settings = get_settings()
        assert settings.node_cap == 7
        assert settings.as_dict()["db_dir"] == str(tmp_path)
    finally:
        monkeypatch.undo()
        Settings.reset()
    assert get_settings().db_dir == PACKAGE_DATA_DIR
