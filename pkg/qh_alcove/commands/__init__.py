"""Command registrars wired into the app through ``PluginSpec.explicit``."""
