import { describe, expect, it, vi } from 'vitest'

import { categoryMembers, renderTotalsView } from '../src/views/totals.js'
import { fixture } from './helpers.js'

const callbacks = () => ({ onFunctionClick: vi.fn() })

function countCells(view: HTMLElement): Record<string, number> {
    const out: Record<string, number> = {}
    for (const row of view.querySelectorAll('tr[data-category]')) {
        const category = (row as HTMLElement).dataset['category']!
        out[category] = Number(row.querySelector('.count')!.textContent)
    }
    return out
}

describe('renderTotalsView', () => {
    it('shows the engineered (3, 1, 2, 0) counts with matching drill-downs', () => {
        const view = renderTotalsView(fixture('engineered'), callbacks())
        expect(countCells(view)).toEqual({ wins: 3, loses: 1, ties: 2, mixed: 0 })
        const listSizes = Array.from(
            view.querySelectorAll('tr[data-category] .category-functions'),
            cell => cell.querySelectorAll('li').length,
        )
        expect(listSizes).toEqual([3, 1, 2, 0])
        const loseList = view.querySelector('tr[data-category="loses"] ul')!
        expect(loseList.textContent).toBe('neg_branin_2d')
    })

    it('all-ties bundle shows zero wins, loses, and mixed', () => {
        const view = renderTotalsView(fixture('selfcmp'), callbacks())
        const counts = countCells(view)
        expect(counts['wins']).toBe(0)
        expect(counts['loses']).toBe(0)
        expect(counts['mixed']).toBe(0)
        expect(counts['ties']).toBe(5)
    })

    it('counts always sum to the function count in the header', () => {
        for (const name of ['fig1', 'engineered', 'bdominant', 'comparable', 'selfcmp']) {
            const bundle = fixture(name)
            const view = renderTotalsView(bundle, callbacks())
            const counts = countCells(view)
            const sum = Object.values(counts).reduce((x, y) => x + y, 0)
            const header = view.querySelector('.totals-header') as HTMLElement
            expect(Number(header.dataset['functionCount'])).toBe(sum)
            expect(header.textContent).toContain(`${sum} functions compared`)
            expect(sum).toBe(Object.keys(bundle.per_function).length)
        }
    })

    it('category membership matches bundle verdicts', () => {
        const bundle = fixture('engineered')
        expect(categoryMembers(bundle, 'win').sort()).toEqual(
            ['neg_ackley_2d', 'neg_rastrigin_2d', 'neg_sphere_2d'],
        )
        expect(categoryMembers(bundle, 'mixed')).toEqual([])
    })

    it('clicking a listed function passes its id along', () => {
        const cb = callbacks()
        const view = renderTotalsView(fixture('engineered'), cb)
        const link = view.querySelector('tr[data-category="loses"] a') as HTMLElement
        link.click()
        expect(cb.onFunctionClick).toHaveBeenCalledExactlyOnceWith('neg_branin_2d')
    })

    it('renders the exclusions block only when exclusions exist', () => {
        const clean = renderTotalsView(fixture('fig1'), callbacks())
        expect(clean.querySelector('.exclusions')).toBeNull()
        const bundle = fixture('fig1')
        bundle.exclusions.push({
            function_id: 'neg_step_2d',
            reason: 'method B: 3 failed run(s)',
        })
        const view = renderTotalsView(bundle, callbacks())
        expect(view.querySelector('.exclusions')!.textContent).toContain('neg_step_2d')
    })
})
