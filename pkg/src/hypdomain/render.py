"""
Draw pipeline stages in the unit disk with geodesics as circular arcs.

"""
import logging

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
from matplotlib import patches

from hypdomain.hyperbolic import apply, as_complex, geodesic_arc, inverse
from hypdomain.inputs import render as settings

POINTS_PER_INCH = 72


def draw_segment(ax, p, q, color, linewidth=1.0, linestyle='-', zorder=2):
    """
    Draw the geodesic segment from p to q.

    """
    zp, zq = as_complex(p), as_complex(q)
    kind, center, radius, thetas = geodesic_arc(zp, zq)
    if kind == 'line':
        ax.plot([zp.real, zq.real], [zp.imag, zq.imag], color=color, linewidth=linewidth,
                linestyle=linestyle, zorder=zorder)
        return
    arc = patches.Arc((center.real, center.imag), 2 * radius, 2 * radius, theta1=thetas[0],
                      theta2=thetas[1], color=color, linewidth=linewidth, linestyle=linestyle,
                      zorder=zorder)
    ax.add_patch(arc)


def draw_polygon(ax, vertices, color, linewidth=1.0, linestyle='-', zorder=2):
    n = len(vertices)
    for k in range(n):
        draw_segment(ax, vertices[k], vertices[(k + 1) % n], color, linewidth, linestyle, zorder)


def disk_axes():
    # svg canvases are measured in points
    size = settings['viewport_px'] / POINTS_PER_INCH
    fig, ax = plt.subplots(1, figsize=(size, size), dpi=POINTS_PER_INCH)
    ax.add_patch(patches.Circle((0, 0), 1.0, fill=False, color='black', linewidth=0.8))
    ax.set_xlim(-1.02, 1.02)
    ax.set_ylim(-1.02, 1.02)
    ax.set_aspect('equal')
    ax.axis('off')
    fig.subplots_adjust(left=0, right=1, bottom=0, top=1)
    return fig, ax


def render_result(result, path):
    """
    Render every stage of a pipeline run into one SVG file.

    Parameters
    ----------
    result : PipelineResult
    path : string

    """
    colors = settings['colors']
    fig, ax = disk_axes()
    back = inverse(result.triangulation.frame)
    for corners in result.triangulation.corners:
        draw_polygon(ax, [apply(back, p) for p in corners], colors['triangulation'], 0.6, zorder=1)
    draw_polygon(ax, result.polygon.polygon.vertices, colors['input'], 1.2)
    for i, chain in enumerate(result.topological.chains):
        for p, q in chain:
            draw_segment(ax, p, q, colors['chains'], 1.0)
        draw_segment(ax, *result.topological.chord(i), colors['chords'], 1.0, '--')
    draw_polygon(ax, result.convex.vertices, colors['convex'], 1.4)
    domain = result.domain.in_input_frame()
    draw_polygon(ax, domain.vertices, colors['dirichlet'], 1.8, zorder=3)
    center = domain.center
    ax.plot([center.re], [center.im], marker='o', color=colors['dirichlet'], zorder=4)
    fig.savefig(path, format='svg')
    plt.close(fig)
    logging.info(f"Rendered stages to {path}")
