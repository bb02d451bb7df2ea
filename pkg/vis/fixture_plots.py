import os
import configparser
import warnings
import pandas as pd
import matplotlib.pyplot as plt
import seaborn as sns
pd.options.mode.chained_assignment = None
warnings.filterwarnings('ignore')

CONFIG = configparser.ConfigParser()
CONFIG.read(os.path.join(os.path.dirname(__file__), 'script_config.ini'))
BASE_PATH = CONFIG['file_locations']['base_path']
DATA_RESULTS = os.path.join(BASE_PATH, '..', 'results')
DATA_VIS = os.path.join(BASE_PATH, '..', 'vis', 'figures')
DPI = CONFIG.getint('figures', 'dpi', fallback = 300)
path = os.path.join(DATA_RESULTS, 'fixture_statistics.csv')


def flips_by_genus(df):
    """
    This function plots the number of Delaunay
    flips for each genus and fixture family
    """
    df['family'] = df['fixture'].str.split('_').str[0]

    sns.set(font_scale = 1.5)
    fig, ax = plt.subplots(1, figsize = (10, 7))
    sns.boxplot(data = df, x = 'genus', y = 'flips', hue = 'family', ax = ax)
    ax.set_title('Flips to reach the Delaunay triangulation', fontsize = 20)
    ax.set_xlabel('Genus')
    ax.set_ylabel('Flips')
    plt.tight_layout()
    plt.savefig(os.path.join(DATA_VIS, 'flips_by_genus.png'), dpi = DPI)
    plt.close(fig)


def side_counts(df):
    """
    This function plots the side counts of the
    Dirichlet domains against the 4g and 12g - 6 bounds
    """
    sns.set(font_scale = 1.5)
    fig, ax = plt.subplots(1, figsize = (10, 7))
    sns.stripplot(data = df, x = 'genus', y = 'dirichlet_sides', ax = ax, size = 8)
    genera = sorted(df['genus'].unique())
    for position, genus in enumerate(genera):
        ax.hlines([4 * genus, 12 * genus - 6], position - 0.3, position + 0.3,
                  colors = 'black', linestyles = 'dashed')
    ax.set_title('Dirichlet domain sides', fontsize = 20)
    ax.set_xlabel('Genus')
    ax.set_ylabel('Sides')
    plt.tight_layout()
    plt.savefig(os.path.join(DATA_VIS, 'dirichlet_sides.png'), dpi = DPI)
    plt.close(fig)


def basepoint_ratio(df):
    """
    This function plots the base point displacement
    relative to the longer crossing loop
    """
    sns.set(font_scale = 1.5)
    fig, ax = plt.subplots(1, figsize = (10, 7))
    sns.scatterplot(data = df, x = 'l0', y = 'c_len', hue = 'genus', ax = ax, s = 80)
    upper = df['l0'].max()
    ax.plot([0, upper], [0, 2 * upper], color = 'black', linestyle = 'dashed',
            label = 'c = 2 L0')
    ax.legend()
    ax.set_title('Base point displacement', fontsize = 20)
    ax.set_xlabel('Longer crossing loop L0')
    ax.set_ylabel('Displacement c')
    plt.tight_layout()
    plt.savefig(os.path.join(DATA_VIS, 'basepoint_ratio.png'), dpi = DPI)
    plt.close(fig)


if __name__ == '__main__':

    os.makedirs(DATA_VIS, exist_ok = True)
    df = pd.read_csv(path)
    flips_by_genus(df)
    side_counts(df)
    basepoint_ratio(df)
