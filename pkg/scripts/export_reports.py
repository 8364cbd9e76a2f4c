import argparse
import logging
import os
import sys

# Add the parent directory to the Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from acceptance import kozlov_table, path_leaf_table
from config import logging_config

logging.basicConfig(level=getattr(logging, logging_config.LEVEL), format=logging_config.FORMAT)
logger = logging.getLogger(__name__)

TABLES = {
    "kozlov": kozlov_table,
    "path-leaf": path_leaf_table,
}


def export_to_csv(table: str = None, output_dir: str = "."):
    """
    Export acceptance tables to CSV files.

    Args:
        table (str, optional): Table to export. If None, exports all tables.
        output_dir (str): Directory receiving <table>.csv files.
    """
    names = [table] if table else list(TABLES)
    os.makedirs(output_dir, exist_ok=True)
    written = []
    for name in names:
        try:
            df = TABLES[name]()
            output_file = os.path.join(output_dir, f"{name}.csv")
            df.to_csv(output_file, index=False)
            logger.info(f"Exported {len(df)} rows to {output_file}")
            written.append(output_file)
        except Exception as e:
            logger.error(f"Error exporting {name}: {str(e)}")
            raise
    return written


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Export acceptance tables to CSV")
    parser.add_argument("--table", choices=list(TABLES), help="Table to export (default: all)")
    parser.add_argument("--output-dir", default=".", help="Directory for the CSV files")
    args = parser.parse_args()
    export_to_csv(args.table, args.output_dir)
