"""ui/ - walkdgs command layer: commands, text reports and the corpus runner."""
