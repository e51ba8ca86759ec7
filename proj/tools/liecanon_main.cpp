// CLI entry point (wired up after the pipeline lands).
int main() { return 0; }
